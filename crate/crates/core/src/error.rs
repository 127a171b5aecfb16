use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The evaluation point lies outside the function's open domain.
    #[error("domain violation: {0}")]
    Domain(String),
    /// A truncated series had to be inverted at a zero constant term.
    #[error("singular point: {0}")]
    Singular(String),
    /// The requested value exists but cannot be represented in the chosen scalar type.
    #[error("not exactly representable: {0}")]
    NotExact(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
