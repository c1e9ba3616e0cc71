//! Error types shared across the crate.

/// Errors reported by basis construction, bijections, and oracles.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An input violated a domain precondition. The message names the
    /// failed inequality or membership condition.
    #[error("domain error: {0}")]
    Domain(String),
    /// A computation exceeded a resource cap (matrix size, backtrack
    /// nodes). Callers must shrink the instance or raise the cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn resource(msg: impl Into<String>) -> Error {
    Error::Resource(msg.into())
}
