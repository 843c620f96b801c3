use thiserror::Error;

/// A failure that ends the process with a specific exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or invalid input data (exit 2).
    #[error("{0}")]
    Data(String),
    /// Invalid flags or flag combinations (exit 3).
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Data(_) => 2,
            CliError::Usage(_) => 3,
        }
    }
}

pub fn data(msg: impl Into<String>) -> CliError {
    CliError::Data(msg.into())
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub type CliResult<T> = Result<T, CliError>;
