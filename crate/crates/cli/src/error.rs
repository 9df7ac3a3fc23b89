use thiserror::Error;

/// Errors surfaced by the command-line harness.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad parameters; maps to exit code 2.
    #[error("usage: {0}")]
    Usage(String),
    /// A correctness check failed; maps to exit code 1.
    #[error("check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Core(#[from] ffskit::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
