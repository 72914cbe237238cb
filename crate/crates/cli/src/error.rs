use std::path::PathBuf;

use fock_core::FockError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid field `{field}`: {reason}")]
    Field { field: String, reason: String },

    #[error("cannot parse {}: {source}", path.display())]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),

    #[error("cannot write csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Core(#[from] FockError),
}

impl CliError {
    pub(crate) fn field(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Field {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// Divergence found while computing maps to the verdict exit code.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(FockError::Divergent(_)) => crate::EXIT_DIVERGENT,
            _ => crate::EXIT_INVALID,
        }
    }
}
