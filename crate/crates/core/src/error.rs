use thiserror::Error;

/// Errors raised by the library. Constraint violations on specs are carried
/// as data (see the `validate_*` functions) and only become an [`Error`] when
/// an operation needs a valid input to proceed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid spec: {}", .0.join("; "))]
    InvalidSpec(Vec<String>),

    #[error("group order {order} exceeds the configured cap {cap}")]
    ResourceLimit { order: u128, cap: usize },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
