use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, values or input files; exit code 2.
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Eval(#[from] cigar::Error),

    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    pub fn usage(flag: &str, msg: impl std::fmt::Display) -> Self {
        Self::Usage(format!("{flag}: {msg}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
