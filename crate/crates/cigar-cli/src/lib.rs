//! Command-line front end for the `cigar` library.
//!
//! Exit codes: 0 success, 1 evaluation error, 2 usage error. Results go to
//! standard output; diagnostics to standard error.

pub mod cmd;
pub mod config;
pub mod error;
pub mod output;

use std::io::Write;

use clap::{Parser, Subcommand};

use cmd::{asym::AsymCmd, green::GreenCmd, martin::MartinCmd, sturm::SturmCmd, surface::SurfaceCmd, verify::VerifyCmd};
use error::{CliError, CliResult};
use output::{emit_table, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "cigar", version, about = "Spectral theory of Δ − 1 on the cigar-type surface")]
pub struct Cli {
    /// Output format; single records default to JSON, tables to CSV.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// JSON object of flag values; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    #[command(subcommand)]
    Surface(SurfaceCmd),
    #[command(subcommand)]
    Green(GreenCmd),
    #[command(subcommand)]
    Asym(AsymCmd),
    #[command(subcommand)]
    Martin(MartinCmd),
    #[command(subcommand)]
    Sturm(SturmCmd),
    #[command(subcommand)]
    Verify(VerifyCmd),
}

/// Which library operations each subcommand exercises.
pub const COMMAND_TABLE: &[(&str, &[&str])] = &[
    ("surface curvature", &["metric_factor", "gauss_curvature", "christoffel_factor"]),
    ("surface geodesic", &["geodesic_integrate", "geodesic_closed_form"]),
    ("surface classify", &["classify_direction"]),
    ("green eval", &["green_eval"]),
    ("green kernel", &["kernel_k", "re_k_spectral_density"]),
    ("green integrand", &["integrand_tail_bound"]),
    ("asym sweep", &["compare_sweep", "predict_eta0", "predict_eta_inf", "predict_ray"]),
    ("asym predict", &["predict_eta0", "predict_eta_inf", "predict_ray"]),
    ("asym i-eta", &["i_eta"]),
    ("martin kernel", &["kernel_eval"]),
    ("martin verify-uniqueness", &["uniqueness_diagnostic"]),
    ("martin represent", &["represent"]),
    ("martin ode-residual", &["kernel_ode_residual"]),
    ("martin limits", &["kernel_realline_limits"]),
    ("sturm scan", &["discrete_spectrum_scan"]),
    ("sturm reconstruct", &["reconstruct"]),
    ("sturm solutions", &["fundamental_solutions", "wronskian"]),
    ("sturm kernel", &["spectral_kernel"]),
    ("verify identities", &["connection_identity", "kernel_k", "a_coefficient", "wronskian", "hyp2f1"]),
    (
        "verify special",
        &[
            "complex_log_gamma",
            "digamma",
            "hyp2f1",
            "a_coefficient",
            "f_hypergeo",
            "w_solution",
            "legendre_halforder",
        ],
    ),
];

fn dispatch(cli: &Cli) -> CliResult<(Table, Format)> {
    let table = match &cli.command {
        Command::Surface(c) => cmd::surface::run(c)?,
        Command::Green(c) => cmd::green::run(c)?,
        Command::Asym(c) => cmd::asym::run(c)?,
        Command::Martin(c) => cmd::martin::run(c)?,
        Command::Sturm(c) => cmd::sturm::run(c)?,
        Command::Verify(c) => cmd::verify::run(c)?,
    };
    let default = if table.record { Format::Json } else { Format::Csv };
    Ok((table, cli.format.unwrap_or(default)))
}

/// Runs one invocation; argv includes the program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let fail = |err: &mut dyn Write, e: CliError| {
        let _ = writeln!(err, "error: {e}");
        e.exit_code()
    };
    let argv = match config::merge(argv) {
        Ok(a) => a,
        Err(e) => return fail(err, e),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let result = dispatch(&cli).and_then(|(table, format)| Ok((emit_table(&table, format)?, table.notes)));
    match result {
        Ok((bytes, notes)) => {
            for n in notes {
                let _ = writeln!(err, "{n}");
            }
            match out.write_all(&bytes) {
                Ok(()) => 0,
                Err(e) => fail(err, CliError::Output(e.to_string())),
            }
        }
        Err(e) => fail(err, e),
    }
}
