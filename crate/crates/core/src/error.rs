use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("validation failed: {0}")]
    Validation(String),
    /// Input exceeds a configured size limit.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    /// An operation was called outside its precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A randomized search ran out of attempts.
    #[error("search exhausted: {0}")]
    Exhausted(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
