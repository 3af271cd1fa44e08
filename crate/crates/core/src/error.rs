use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on shapes, ranges or finiteness was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An iterate became non-finite during an ADMM solve.
    #[error("numerical breakdown in view {view}: {reason}")]
    NumericalBreakdown { view: usize, reason: String },

    #[error("parse error in {}:{line}: {reason}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidInput(_) => 2,
            Error::Parse { .. } | Error::Io(_) => 3,
            Error::NumericalBreakdown { .. } => 4,
        }
    }
}
