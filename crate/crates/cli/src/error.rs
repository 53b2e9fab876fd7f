use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Codec(#[from] nlts_core::Error),
    #[error(transparent)]
    Dataset(#[from] crate::dataset::DatasetError),
    #[error("{}: {message}", path.display())]
    Spec { path: PathBuf, message: String },
    #[error("sample counts differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 0 ok, 1 verification failure, 2 format error, 3 I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) | CliError::LengthMismatch { .. } => 1,
            CliError::Io { .. } => 3,
            CliError::Dataset(crate::dataset::DatasetError::Io { .. }) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
