use std::path::PathBuf;

use thiserror::Error;

use crate::exit;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] flatcert_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        use flatcert_core::Error as E;
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Core(
                E::Parse(_)
                | E::NotSquareFree(_)
                | E::InvalidParameter(_)
                | E::NonIntegralAlgebra
                | E::DivisionByZero,
            ) => exit::USAGE,
            CliError::Core(E::NotFound) => exit::NOT_FOUND,
            _ => exit::FAILURE,
        }
    }
}
