use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside an operation's domain (bad sizes, out-of-range indices, failed preconditions).
    #[error("domain error: {0}")]
    Domain(String),
    /// A structurally valid board that an operation has no model for.
    #[error("unsupported spec: {0}")]
    Unsupported(String),
    /// Malformed external input (JSON, CSV, sequence files).
    #[error("parse error: {0}")]
    Parse(String),
    /// An internal consistency check failed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
