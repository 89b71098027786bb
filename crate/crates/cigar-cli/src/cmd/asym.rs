use clap::{Args, Subcommand, ValueEnum};

use cigar::asymptotic::*;
use cigar::green::QuadratureConfig;

use super::{finite, grid, positive};
use crate::error::{CliError, CliResult};
use crate::output::Table;
use crate::row;

#[derive(Debug, Subcommand)]
pub enum AsymCmd {
    /// Numeric G against a boundary-regime law over a grid.
    Sweep(SweepArgs),
    /// The leading-order prediction at one point.
    Predict(PredictArgs),
    /// I(η) in the spectral and Laplace forms.
    IEta(IEtaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Eta0,
    EtaInf,
    Ray,
}

#[derive(Debug, Args)]
pub struct RegimeArgs {
    #[arg(long, value_enum)]
    pub regime: RegimeArg,
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, value_parser = positive)]
    pub y: f64,
    /// Target abscissa (η regimes).
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub xi: Option<f64>,
    /// Ray slope η = m|ξ|.
    #[arg(long, value_parser = positive)]
    pub m: Option<f64>,
    /// Ray side sign(ξ).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub side: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub regime: RegimeArgs,
    /// Explicit grid of η (or |ξ| on a ray), comma separated.
    #[arg(long, value_delimiter = ',', value_parser = positive, conflicts_with_all = ["from", "to", "n"])]
    pub grid: Vec<f64>,
    #[arg(long, value_parser = positive, requires_all = ["to", "n"])]
    pub from: Option<f64>,
    #[arg(long, value_parser = positive)]
    pub to: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Geometric spacing between --from and --to.
    #[arg(long)]
    pub log: bool,
    #[arg(long, default_value_t = 1e-12, value_parser = positive)]
    pub rel_tol: f64,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub regime: RegimeArgs,
    /// Target height (η regimes).
    #[arg(long, value_parser = positive)]
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Spectral,
    Laplace,
    Both,
}

#[derive(Debug, Args)]
pub struct IEtaArgs {
    #[arg(long, value_parser = positive)]
    pub eta: f64,
    /// Horizontal separation A ≥ 0.
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    #[arg(long, value_parser = positive)]
    pub y: f64,
    #[arg(long, value_enum, default_value = "both")]
    pub form: FormArg,
}

row!(SweepRow { parameter: f64, numeric: f64, predicted: f64, ratio: f64, fitted_rate: f64 });

row!(PredictRow { regime: &'static str, x: f64, y: f64, xi: f64, eta: f64, predicted: f64 });

row!(IEtaRow { eta: f64, a: f64, y: f64, spectral: Option<f64>, laplace: Option<f64>, relative_difference: Option<f64> });

fn regime(r: &RegimeArgs) -> CliResult<Regime> {
    let xi = || r.xi.ok_or_else(|| CliError::usage("--xi", "required for the η regimes"));
    Ok(match r.regime {
        RegimeArg::Eta0 => Regime::Eta0 { x: r.x, y: r.y, xi: xi()? },
        RegimeArg::EtaInf => Regime::EtaInf { x: r.x, y: r.y, xi: xi()? },
        RegimeArg::Ray => {
            let m = r.m.ok_or_else(|| CliError::usage("--m", "required for the ray regime"))?;
            let ray = RayParams::new(m, r.side).map_err(|e| CliError::usage("--side", e))?;
            Regime::Ray { x: r.x, y: r.y, ray }
        }
    })
}

pub fn run(cmd: &AsymCmd) -> CliResult<Table> {
    match cmd {
        AsymCmd::Sweep(s) => {
            let reg = regime(&s.regime)?;
            let points = match (s.from, s.to, s.n) {
                (Some(f), Some(t), Some(n)) => grid("--n", f, t, n, s.log)?,
                _ if !s.grid.is_empty() => s.grid.clone(),
                _ => return Err(CliError::usage("--grid", "give --grid or --from/--to/--n")),
            };
            let cfg = QuadratureConfig { rel_tol: s.rel_tol, ..QuadratureConfig::default() };
            let rows: Vec<SweepRow> = compare_sweep(&reg, &points, &cfg)?
                .into_iter()
                .map(|r| SweepRow {
                    parameter: r.parameter,
                    numeric: r.numeric,
                    predicted: r.predicted,
                    ratio: r.ratio,
                    fitted_rate: r.fitted_rate,
                })
                .collect();
            Table::from_rows(&rows)
        }
        AsymCmd::Predict(p) => {
            let r = &p.regime;
            let eta = || p.eta.ok_or_else(|| CliError::usage("--eta", "required for the η regimes"));
            let row = match regime(r)? {
                Regime::Eta0 { x, y, xi } => {
                    let eta = eta()?;
                    PredictRow { regime: "eta0", x, y, xi, eta, predicted: predict_eta0(x, y, xi, eta)? }
                }
                Regime::EtaInf { x, y, xi } => {
                    let eta = eta()?;
                    PredictRow { regime: "eta-inf", x, y, xi, eta, predicted: predict_eta_inf(x, y, xi, eta)? }
                }
                Regime::Ray { x, y, ray } => {
                    let xi = r.xi.ok_or_else(|| CliError::usage("--xi", "required: the point ξ on the ray"))?;
                    PredictRow { regime: "ray", x, y, xi, eta: ray.m * xi.abs(), predicted: predict_ray(ray, x, y, xi)? }
                }
            };
            Table::record(row)
        }
        AsymCmd::IEta(i) => {
            let cfg = QuadratureConfig::default();
            let want = |f: FormArg| i.form == f || i.form == FormArg::Both;
            let spectral = want(FormArg::Spectral).then(|| i_eta(i.eta, i.a, i.y, IForm::Spectral, &cfg)).transpose()?;
            let laplace = want(FormArg::Laplace).then(|| i_eta(i.eta, i.a, i.y, IForm::Laplace, &cfg)).transpose()?;
            let relative_difference = spectral.zip(laplace).map(|(s, l)| (s / l - 1.0).abs());
            Table::record(IEtaRow { eta: i.eta, a: i.a, y: i.y, spectral, laplace, relative_difference })
        }
    }
}
