use clap::{Args, Subcommand, ValueEnum};

use cigar::ode::OdeConfig;
use cigar::surface::*;

use super::{describe, finite, positive};
use crate::error::{CliError, CliResult};
use crate::output::Table;
use crate::row;

#[derive(Debug, Subcommand)]
pub enum SurfaceCmd {
    /// P(y), K(y) and k(y) at one height.
    Curvature(CurvatureArgs),
    /// Integrate a geodesic of a closed-form family and compare.
    Geodesic(GeodesicArgs),
    /// Boundary point reached from height a with slope m.
    Classify(ClassifyArgs),
}

#[derive(Debug, Args)]
pub struct CurvatureArgs {
    #[arg(long, value_parser = positive)]
    pub y: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Vertical,
    HorizontalTangent,
    Critical,
    Steep,
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Start height.
    #[arg(long, value_parser = positive)]
    pub a: f64,
    /// Slope, steep kind only.
    #[arg(long, value_parser = positive)]
    pub m: Option<f64>,
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_negative_numbers = true)]
    pub shift: f64,
    #[arg(long)]
    pub reflect: bool,
    #[arg(long, default_value_t = 20.0, value_parser = positive)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1e-12, value_parser = positive)]
    pub rtol: f64,
    #[arg(long, default_value_t = 1e-14, value_parser = positive)]
    pub atol: f64,
    #[arg(long, default_value_t = 0.05, value_parser = positive)]
    pub h_max: f64,
    /// Keep every n-th sample (the last one is always kept).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub every: u64,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, value_parser = positive)]
    pub a: f64,
    /// Rise per unit horizontal travel; `inf` and `-inf` allowed.
    #[arg(long, allow_negative_numbers = true)]
    pub m: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub sign: f64,
}

row!(CurvatureRow { y: f64, metric_factor: f64, gauss_curvature: f64, christoffel_factor: f64 });

row!(GeodesicRow {
    t: f64,
    x: f64,
    y: f64,
    xdot: f64,
    ydot: f64,
    speed_drift: f64,
    closed_form_x: Option<f64>,
    deviation: Option<f64>,
});

row!(ClassifyRow { a: f64, m: f64, sign: f64, boundary: &'static str, xi: Option<f64>, theta: Option<f64> });

pub fn run(cmd: &SurfaceCmd) -> CliResult<Table> {
    match cmd {
        SurfaceCmd::Curvature(a) => Table::record(CurvatureRow {
            y: a.y,
            metric_factor: metric_factor(a.y)?,
            gauss_curvature: gauss_curvature(a.y)?,
            christoffel_factor: christoffel_factor(a.y)?,
        }),
        SurfaceCmd::Geodesic(g) => geodesic(g),
        SurfaceCmd::Classify(c) => {
            let (boundary, xi, theta) = describe(classify_direction(c.a, c.m, c.sign)?);
            Table::record(ClassifyRow { a: c.a, m: c.m, sign: c.sign, boundary, xi, theta })
        }
    }
}

fn geodesic(g: &GeodesicArgs) -> CliResult<Table> {
    let kind = match g.kind {
        KindArg::Vertical => GeodesicKind::Vertical,
        KindArg::HorizontalTangent => GeodesicKind::HorizontalTangent,
        KindArg::Critical => GeodesicKind::Critical,
        KindArg::Steep => GeodesicKind::Steep,
    };
    if matches!(kind, GeodesicKind::Steep) && g.m.is_none() {
        return Err(CliError::usage("--m", "the steep kind needs a slope"));
    }
    let mut spec = GeodesicSpec::new(kind, g.a, g.m.unwrap_or(f64::NAN))?.shifted(g.shift);
    if g.reflect {
        spec = spec.reflect();
    }
    let sign = if spec.reflected { -1.0 } else { 1.0 };
    let cfg = OdeConfig { rtol: g.rtol, atol: g.atol, h_max: g.h_max, ..OdeConfig::default() };
    let path = geodesic_integrate(SurfacePoint::new(spec.x_shift, spec.a)?, unit_tangent(spec.a, sign * spec.m, sign)?, g.t_max, &cfg)?;
    let last = path.len() - 1;
    let rows: Vec<GeodesicRow> = path
        .iter()
        .enumerate()
        .filter(|(i, _)| (*i as u64).is_multiple_of(g.every) || *i == last)
        .map(|(_, p)| {
            let closed = match kind {
                GeodesicKind::Vertical => Some(spec.x_shift),
                _ => geodesic_closed_form(&spec, p.y).ok(),
            };
            GeodesicRow {
                t: p.t,
                x: p.x,
                y: p.y,
                xdot: p.xdot,
                ydot: p.ydot,
                speed_drift: p.speed_drift,
                closed_form_x: closed,
                deviation: closed.map(|c| (p.x - c).abs()),
            }
        })
        .collect();
    Table::from_rows(&rows)
}
