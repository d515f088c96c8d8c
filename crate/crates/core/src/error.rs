use thiserror::Error;

/// Errors produced by the library.
///
/// Verification failures are never errors; they are reported through
/// [`crate::report::VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("precision-model error: {0}")]
    Precision(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
