use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("infinite neighbor set: {0} lies in the closed arc")]
    InfiniteNeighborSet(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// The message without the kind prefix.
    pub fn reason(&self) -> &str {
        match self {
            Error::InvalidInput(m) | Error::InfiniteNeighborSet(m) | Error::InvariantViolation(m) => m,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
