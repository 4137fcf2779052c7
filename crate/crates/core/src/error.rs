use thiserror::Error;

pub type Result<T> = std::result::Result<T, OpticsError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpticsError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The call itself is malformed (empty chain, inconsistent options).
    #[error("usage error: {0}")]
    Usage(String),
    /// A computed value drifted past a group invariant.
    #[error("numerical integrity error: {0}")]
    Integrity(String),
}
