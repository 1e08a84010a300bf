use thiserror::Error;

/// Errors produced by the workbench.
///
/// The split mirrors the failure modes of the underlying mathematics:
/// `Domain` for inputs outside an operation's domain (zero where nonzero is
/// required, singular matrices), `Argument` for malformed requests,
/// `Validation` for data that is syntactically fine but arithmetically
/// inconsistent, `Budget` for enumeration work that would exceed the
/// configured limit, and `Internal` for invariants that should be
/// unreachable (these indicate a bug, not bad input).
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
