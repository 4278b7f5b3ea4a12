//! Error taxonomy shared by all subsystems.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied parameter violates an operation precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The instance exceeds a hard enumeration or sampling cap.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// A randomized procedure missed its postcondition; rerunning with a
    /// fresh seed may succeed. Carries a short diagnostic.
    #[error("retryable failure: {0}")]
    Retryable(String),

    /// A constructed object failed structural validation. Carries the
    /// offending statistics so the caller can adjust parameters.
    #[error("validation failure: {reason}")]
    Validation { reason: String, stats: Vec<(String, f64)> },

    /// A multi-stage pipeline exhausted its retry budget.
    #[error("pipeline failure at stage `{stage}`: {reason}")]
    Pipeline { stage: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn validation(reason: impl Into<String>, stats: Vec<(String, f64)>) -> Self {
        Error::Validation { reason: reason.into(), stats }
    }

    /// True for failures that a caller may retry with a new seed.
    pub fn is_retryable(&self) -> bool {
        matches!(self, Error::Retryable(_))
    }
}
