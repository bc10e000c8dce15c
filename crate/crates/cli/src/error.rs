//! CLI error type and its mapping onto process exit codes.

use std::path::PathBuf;

use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot write `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] steerlab_core::Error),

    #[error("{failed} of {total} verification checks failed")]
    VerifyFailed { failed: usize, total: usize },
}

impl CliError {
    /// 2 for usage/configuration problems, 3 for numerical failures,
    /// 4 for failed verification runs.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(err) => match err {
                steerlab_core::Error::InvalidParam { .. }
                | steerlab_core::Error::BudgetTooSmall { .. } => 2,
                _ => 3,
            },
            CliError::VerifyFailed { .. } => 4,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}
