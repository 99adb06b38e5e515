use thiserror::Error;

/// Library-wide error type. `Precondition` maps to CLI exit code 1,
/// `Numerical` to exit code 2.
#[derive(Debug, Error)]
pub enum TfaError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed manifest at line {line}: {msg}")]
    Manifest { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, TfaError>;

pub(crate) fn precondition(msg: impl Into<String>) -> TfaError {
    TfaError::Precondition(msg.into())
}

pub(crate) fn numerical(msg: impl Into<String>) -> TfaError {
    TfaError::Numerical(msg.into())
}
