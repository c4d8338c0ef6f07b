use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    /// Rejected before any trial runs.
    #[error("invalid spec: {0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] exlab_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Record { path: String, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type LabResult<T> = std::result::Result<T, LabError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> LabResult<T> {
    Err(LabError::Validation(msg.into()))
}
