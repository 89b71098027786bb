use clap::{Args, Subcommand};

use cigar::green::QuadratureConfig;
use cigar::martin::*;
use cigar::surface::{BoundaryPoint, SurfacePoint};

use super::{angle, atom, boundary_point, describe, finite, positive};
use crate::error::{CliError, CliResult};
use crate::output::Table;
use crate::row;

#[derive(Debug, Subcommand)]
pub enum MartinCmd {
    /// K(p, ω) normalized at the reference point.
    Kernel(KernelArgs),
    /// Growth diagnostic ∂_yW − ½W for a measure of circle atoms.
    VerifyUniqueness(UniquenessArgs),
    /// W(p) = Σ weight·K(p, ω) for a discrete measure.
    Represent(RepresentArgs),
    /// ODE residual of the θ-kernel profile.
    OdeResidual(OdeArgs),
    /// Real-line kernels against the corner kernels along a ξ sweep.
    Limits(LimitArgs),
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, value_parser = positive)]
    pub y: f64,
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_negative_numbers = true)]
    pub ref_x: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub ref_y: f64,
}

impl PointArgs {
    fn resolve(&self) -> CliResult<(SurfacePoint, ReferencePoint)> {
        Ok((SurfacePoint::new(self.x, self.y)?, ReferencePoint::new(self.ref_x, self.ref_y)?))
    }
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// theta=ANGLE (circle; pi/N accepted) or xi=VALUE (real line).
    #[arg(long, value_parser = boundary_point, allow_hyphen_values = true)]
    pub boundary: BoundaryPoint,
}

#[derive(Debug, Args)]
pub struct UniquenessArgs {
    /// Circle atoms theta=ANGLE:WEIGHT, comma separated.
    #[arg(long, value_delimiter = ',', required = true, value_parser = atom)]
    pub atoms: Vec<Atom>,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub b: f64,
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, default_value_t = 12.0, value_parser = positive)]
    pub y_max: f64,
    #[arg(long, default_value_t = 0.01, value_parser = positive)]
    pub step: f64,
    /// Print every sample instead of the summary.
    #[arg(long)]
    pub samples: bool,
}

#[derive(Debug, Args)]
pub struct RepresentArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// Atoms theta=ANGLE:WEIGHT or xi=VALUE:WEIGHT, comma separated.
    #[arg(long, value_delimiter = ',', required = true, value_parser = atom, allow_hyphen_values = true)]
    pub atoms: Vec<Atom>,
}

#[derive(Debug, Args)]
pub struct OdeArgs {
    #[arg(long, value_parser = angle)]
    pub theta: f64,
    /// Heights; defaults to 0.2, 0.4, …, 8.
    #[arg(long, value_delimiter = ',', value_parser = positive)]
    pub ys: Vec<f64>,
    #[arg(long, default_value_t = 1e-3, value_parser = positive)]
    pub h: f64,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_delimiter = ',', required = true, value_parser = finite, allow_negative_numbers = true)]
    pub xi: Vec<f64>,
}

row!(KernelRow { x: f64, y: f64, boundary: &'static str, xi: Option<f64>, theta: Option<f64>, kernel: f64 });

row!(UniquenessRow { b: f64, x: f64, y_max: f64, holds: bool, first_violation: Option<f64>, min_j: f64 });

row!(SampleRow { y: f64, j: f64, violates: bool });

row!(RepresentRow { x: f64, y: f64, total_weight: f64, value: f64 });

row!(OdeRow { theta: f64, lambda: f64, y: f64, residual: f64 });

row!(LimitRowOut { xi: f64, kernel: f64, limit: f64, ratio: f64 });

pub fn run(cmd: &MartinCmd) -> CliResult<Table> {
    let cfg = QuadratureConfig::default();
    match cmd {
        MartinCmd::Kernel(k) => {
            let (p, reference) = k.point.resolve()?;
            let (boundary, xi, theta) = describe(k.boundary);
            Table::record(KernelRow { x: p.x, y: p.y, boundary, xi, theta, kernel: kernel_eval(p, k.boundary, reference, &cfg)? })
        }
        MartinCmd::VerifyUniqueness(u) => {
            if u.atoms.iter().any(|a| matches!(a.point, BoundaryPoint::RealLine { .. })) {
                return Err(CliError::usage("--atoms", "the growth diagnostic takes circle atoms only"));
            }
            let measure = DiscreteBoundaryMeasure::new(u.atoms.clone()).map_err(|e| CliError::usage("--atoms", e))?;
            let r = uniqueness_diagnostic(&measure, u.b, u.x, u.y_max, u.step, ReferencePoint::default())?;
            if u.samples {
                let rows: Vec<SampleRow> = r.samples.iter().map(|&(y, j)| SampleRow { y, j, violates: j < 0.0 }).collect();
                return Table::from_rows(&rows);
            }
            let min_j = r.samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
            Table::record(UniquenessRow { b: u.b, x: u.x, y_max: u.y_max, holds: r.holds, first_violation: r.first_violation, min_j })
        }
        MartinCmd::Represent(r) => {
            let (p, reference) = r.point.resolve()?;
            let measure = DiscreteBoundaryMeasure::new(r.atoms.clone()).map_err(|e| CliError::usage("--atoms", e))?;
            let value = represent(&measure, p, reference, &cfg)?;
            Table::record(RepresentRow { x: p.x, y: p.y, total_weight: measure.total_weight(), value })
        }
        MartinCmd::OdeResidual(o) => {
            let ys = if o.ys.is_empty() { (1..=40).map(|i| 0.2 * i as f64).collect() } else { o.ys.clone() };
            let r = kernel_ode_residual(o.theta, &ys, o.h)?;
            let rows: Vec<OdeRow> =
                r.points.iter().map(|p| OdeRow { theta: r.theta, lambda: r.lambda, y: p.y, residual: p.residual }).collect();
            Table::from_rows(&rows)
        }
        MartinCmd::Limits(l) => {
            let (p, reference) = l.point.resolve()?;
            let rows: Vec<LimitRowOut> = kernel_realline_limits(p, &l.xi, reference, &cfg)?
                .into_iter()
                .map(|r| LimitRowOut { xi: r.xi, kernel: r.kernel, limit: r.limit, ratio: r.ratio })
                .collect();
            Table::from_rows(&rows)
        }
    }
}
