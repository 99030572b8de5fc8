use thiserror::Error;

/// Errors raised while building or analysing a scheme.
///
/// Verification outcomes (an axiom failing, a duality check failing) are not
/// errors; they are reported through the report types. This enum covers
/// misuse, bad input and exceeded resource bounds.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource bound exceeded: {what} needs {needed}, bound is {bound}")]
    Resource {
        what: &'static str,
        needed: usize,
        bound: usize,
    },

    #[error("integrity failure: {0}")]
    Integrity(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
