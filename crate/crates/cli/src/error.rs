use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Parse(String),
    #[error("invalid config at `{path}`: {message}")]
    Validation { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("computation failed: {0}")]
    Computation(#[from] nemsqueeze_core::Error),
}

impl CliError {
    pub fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Validation {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit code: 1 for bad input, 2 for failed computations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Computation(_) => crate::EXIT_COMPUTATION,
            _ => crate::EXIT_INVALID,
        }
    }
}
