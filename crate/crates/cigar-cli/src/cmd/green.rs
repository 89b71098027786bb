use clap::{Args, Subcommand, ValueEnum};

use cigar::green::*;

use super::{finite, positive};
use crate::error::CliResult;
use crate::output::Table;
use crate::row;

#[derive(Debug, Subcommand)]
pub enum GreenCmd {
    /// G((x, y), (ξ, η)) with its error estimate.
    Eval(EvalArgs),
    /// The kernel k(s, y, η) in both forms and the real density.
    Kernel(KernelArgs),
    /// The s-integrand of G and its tail bound.
    Integrand(IntegrandArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RouteArg {
    Auto,
    RealAxis,
    Rotated,
    Saddle,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long, value_parser = positive)]
    pub y: f64,
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub xi: f64,
    #[arg(long, value_parser = positive)]
    pub eta: f64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, default_value_t = 1e-12, value_parser = positive)]
    pub rel_tol: f64,
    #[arg(long, value_enum, default_value = "auto")]
    pub route: RouteArg,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub s: f64,
    #[arg(long, value_parser = positive)]
    pub y: f64,
    #[arg(long, value_parser = positive)]
    pub eta: f64,
}

#[derive(Debug, Args)]
pub struct IntegrandArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Spectral parameters, comma separated.
    #[arg(long, value_delimiter = ',', required = true, value_parser = finite, allow_negative_numbers = true)]
    pub s: Vec<f64>,
}

row!(EvalRow { value: f64, error_estimate: f64, nodes_used: usize });

row!(KernelRow {
    s: f64,
    y: f64,
    eta: f64,
    definition_re: f64,
    definition_im: f64,
    product_re: f64,
    product_im: f64,
    re_k_density: f64,
});

row!(IntegrandRow { s: f64, integrand: f64, tail_bound: f64 });

fn query(p: &PairArgs) -> CliResult<GreenQuery> {
    Ok(GreenQuery::new(p.x, p.y, p.xi, p.eta)?)
}

pub fn run(cmd: &GreenCmd) -> CliResult<Table> {
    match cmd {
        GreenCmd::Eval(e) => {
            let route = match e.route {
                RouteArg::Auto => Route::Auto,
                RouteArg::RealAxis => Route::RealAxis,
                RouteArg::Rotated => Route::Rotated,
                RouteArg::Saddle => Route::Saddle,
            };
            let cfg = QuadratureConfig { rel_tol: e.rel_tol, route, ..QuadratureConfig::default() };
            let g = green_eval(&query(&e.pair)?, &cfg)?;
            Table::record(EvalRow { value: g.value, error_estimate: g.error_estimate, nodes_used: g.nodes_used })
        }
        GreenCmd::Kernel(k) => {
            let def = kernel_k(k.s, k.y, k.eta, KernelForm::Definition)?;
            let prod = kernel_k(k.s, k.y, k.eta, KernelForm::Product)?;
            Table::record(KernelRow {
                s: k.s,
                y: k.y,
                eta: k.eta,
                definition_re: def.re,
                definition_im: def.im,
                product_re: prod.re,
                product_im: prod.im,
                re_k_density: re_k_spectral_density(k.s, k.y, k.eta)?,
            })
        }
        GreenCmd::Integrand(i) => {
            let q = query(&i.pair)?;
            let rows = i
                .s
                .iter()
                .map(|&s| Ok(IntegrandRow { s, integrand: green_integrand(s, &q)?, tail_bound: integrand_tail_bound(s, &q) }))
                .collect::<CliResult<Vec<_>>>()?;
            Table::from_rows(&rows)
        }
    }
}
