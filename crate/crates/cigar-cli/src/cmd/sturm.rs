use clap::{Args, Subcommand};
use num_complex::Complex64 as C64;
use serde::Deserialize;

use cigar::sturm::*;

use super::{finite, grid, positive};
use crate::error::{CliError, CliResult};
use crate::output::Table;
use crate::row;

#[derive(Debug, Subcommand)]
pub enum SturmCmd {
    /// Look for square-integrable eigenfunctions on a λ grid.
    Scan(ScanArgs),
    /// Expand sampled data in the continuous spectrum and resum.
    Reconstruct(ReconstructArgs),
    /// The fundamental pair and its Wronskian.
    Solutions(SolutionArgs),
    /// The truncated spectral kernel.
    Kernel(KernelArgs),
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub lmin: f64,
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub lmax: f64,
    #[arg(long, default_value_t = 50)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// CSV with header `x,value`, x increasing inside (0, ∞).
    #[arg(long)]
    pub input: std::path::PathBuf,
    #[arg(long, value_parser = positive)]
    pub smax: f64,
    #[arg(long, default_value_t = 0.5, value_parser = positive)]
    pub panel_width: f64,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub nodes_per_panel: u64,
    /// Fail (exit 1) when the relative L² error exceeds this.
    #[arg(long, value_parser = positive)]
    pub bound: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolutionArgs {
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_negative_numbers = true)]
    pub lambda_im: f64,
    #[arg(long, value_delimiter = ',', required = true, value_parser = positive)]
    pub x: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, value_parser = positive)]
    pub x: f64,
    #[arg(long, value_parser = positive)]
    pub y: f64,
    #[arg(long, value_parser = positive)]
    pub smax: f64,
}

row!(ScanRowOut {
    lambda: f64,
    case: ScanCase,
    alpha_re: f64,
    alpha_im: f64,
    zero_exponent_1: f64,
    zero_exponent_2: f64,
    growth_rate_1: f64,
    growth_rate_2: f64,
    regular_exponent: f64,
    regular_growth: f64,
    no_l2_eigenfunction: bool,
    inconclusive: bool,
});

row!(ReconstructRow { x: f64, value: f64, reconstructed: f64, relative_l2_error: f64 });

row!(SolutionRow {
    x: f64,
    w1_re: f64,
    w1_im: f64,
    w2_re: f64,
    w2_im: f64,
    wronskian_re: f64,
    wronskian_im: f64,
    expected_re: f64,
    expected_im: f64,
});

row!(KernelRow { x: f64, y: f64, s_max: f64, kernel: f64 });

#[derive(Deserialize)]
struct Sample {
    x: f64,
    value: f64,
}

fn read_samples(path: &std::path::Path) -> CliResult<SampledFunction> {
    let bad = |e: &dyn std::fmt::Display| CliError::usage("--input", format!("{}: {e}", path.display()));
    let mut reader = csv::Reader::from_path(path).map_err(|e| bad(&e))?;
    let (mut x, mut values) = (Vec::new(), Vec::new());
    for rec in reader.deserialize::<Sample>() {
        let s = rec.map_err(|e| bad(&e))?;
        x.push(s.x);
        values.push(s.value);
    }
    SampledFunction::new(x, values).map_err(|e| bad(&e))
}

pub fn run(cmd: &SturmCmd) -> CliResult<Table> {
    match cmd {
        SturmCmd::Scan(s) => {
            if s.lmax < s.lmin {
                return Err(CliError::usage("--lmax", "must not be below --lmin"));
            }
            let all = grid("--n", s.lmin, s.lmax, s.n, false)?;
            let lambdas: Vec<f64> = all.iter().copied().filter(|l| (l - 0.25).abs() > BRANCH_KEEP_OUT).collect();
            let report = discrete_spectrum_scan(&lambdas)?;
            let rows: Vec<ScanRowOut> = report
                .rows
                .iter()
                .map(|r| ScanRowOut {
                    lambda: r.lambda,
                    case: r.case,
                    alpha_re: r.alpha_re,
                    alpha_im: r.alpha_im,
                    zero_exponent_1: r.zero_exponents[0],
                    zero_exponent_2: r.zero_exponents[1],
                    growth_rate_1: r.growth_rates[0],
                    growth_rate_2: r.growth_rates[1],
                    regular_exponent: r.regular_exponent,
                    regular_growth: r.regular_growth,
                    no_l2_eigenfunction: r.no_l2_eigenfunction,
                    inconclusive: r.inconclusive,
                })
                .collect();
            let mut table = Table::from_rows(&rows)?.with_note(format!(
                "{} λ scanned, eigenfunction flags {}, inconclusive {}",
                rows.len(),
                report.eigenfunction_flags,
                report.inconclusive
            ));
            if lambdas.len() < all.len() {
                table = table.with_note(format!("skipped {} λ within {BRANCH_KEEP_OUT} of 1/4", all.len() - lambdas.len()));
            }
            Ok(table)
        }
        SturmCmd::Reconstruct(r) => {
            let h = read_samples(&r.input)?;
            let grid = SpectralGrid { panel_width: r.panel_width, nodes_per_panel: r.nodes_per_panel as usize };
            let out = reconstruct(&h, r.smax, grid, r.bound)?;
            let rows: Vec<ReconstructRow> = h
                .x
                .iter()
                .zip(&h.values)
                .zip(&out.values)
                .map(|((&x, &value), &reconstructed)| ReconstructRow {
                    x,
                    value,
                    reconstructed,
                    relative_l2_error: out.relative_l2_error,
                })
                .collect();
            Table::from_rows(&rows)
        }
        SturmCmd::Solutions(s) => {
            let lambda = C64::new(s.lambda, s.lambda_im);
            let expected = FundamentalPair::new(lambda).expected_wronskian()?;
            let rows = s
                .x
                .iter()
                .map(|&x| {
                    let (w1, w2) = fundamental_solutions(lambda, x)?;
                    let w = wronskian(lambda, x)?;
                    Ok(SolutionRow {
                        x,
                        w1_re: w1.re,
                        w1_im: w1.im,
                        w2_re: w2.re,
                        w2_im: w2.im,
                        wronskian_re: w.re,
                        wronskian_im: w.im,
                        expected_re: expected.re,
                        expected_im: expected.im,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            Table::from_rows(&rows)
        }
        SturmCmd::Kernel(k) => {
            Table::record(KernelRow { x: k.x, y: k.y, s_max: k.smax, kernel: spectral_kernel(k.x, k.y, k.smax)? })
        }
    }
}
