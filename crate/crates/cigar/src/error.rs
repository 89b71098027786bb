use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    #[error("{what} did not converge within {budget} terms")]
    NoConvergence { what: &'static str, budget: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),

    #[error("requested tolerance {requested:e} not reached (estimate {achieved:e})")]
    Tolerance { requested: f64, achieved: f64 },

    #[error("point is within {distance:e} of the diagonal")]
    NearDiagonal { distance: f64 },

    #[error("coefficient integral diverges: {0}")]
    Divergent(String),

    #[error("integration failed at t = {t}: {reason}")]
    Step { t: f64, reason: String },

    #[error("unsupported case: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
