use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = WarpadError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum WarpadError {
    /// Inconsistent or inadmissible configuration (bad level, non-divisible sizes, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// An argument or value failed validation.
    #[error("validation error: {0}")]
    Validation(String),

    /// Metadata of a wavelet pyramid (or similar container) does not line up.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("failed to ingest {path}: {reason}")]
    Ingestion { path: PathBuf, reason: String },

    /// Model file missing or unloadable, or the backend returned garbage.
    #[error("embedding backend error: {0}")]
    Backend(String),

    #[error("transport error after {retries} retries: {reason}")]
    Transport { retries: u32, reason: String },

    /// Zero-norm embedding; a working backend never produces one.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl WarpadError {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        WarpadError::Config(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        WarpadError::Validation(msg.into())
    }

    pub(crate) fn ingestion(path: impl Into<PathBuf>, reason: impl ToString) -> Self {
        WarpadError::Ingestion {
            path: path.into(),
            reason: reason.to_string(),
        }
    }
}
