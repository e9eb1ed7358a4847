use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("generator {index} is not invertible")]
    NotInvertible { index: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid value for `{field}`: {reason}")]
    Invalid { field: String, reason: String },

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("word {word} received two different coefficient vectors")]
    InconsistentLambda { word: String },

    #[error("size limit exceeded: {0}")]
    SizeExceeded(String),

    #[error("inconsistent partition: {0}")]
    InconsistentPartition(String),

    #[error("output error: {0}")]
    Output(String),

    #[error("internal assertion failed: {0}")]
    AssertionFailed(String),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
