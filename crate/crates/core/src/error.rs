use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input violates an operation's precondition.
    #[error("rejected input: {0}")]
    RejectedInput(String),

    #[error("numeric failure after {iterations} iterations: {reason}")]
    NumericFailure { iterations: usize, reason: String },
}

impl Error {
    pub(crate) fn rejected(msg: impl Into<String>) -> Self {
        Error::RejectedInput(msg.into())
    }
}
