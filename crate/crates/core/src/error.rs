use thiserror::Error;

/// Library error type.
///
/// The variants map onto the CLI exit codes: `InvalidInput`, `Precondition`
/// and `Mismatch` are reported as input errors, `Capacity` signals that an
/// exact-enumeration limit was exceeded and a heuristic mode (or a smaller
/// instance) is needed.
#[derive(Debug, Error)]
pub enum Error {
    /// Structural mismatch between objects that must live on the same space.
    #[error("mismatch: {0}")]
    Mismatch(String),
    /// Malformed file contents or out-of-range arguments.
    #[error("input: {0}")]
    InvalidInput(String),
    /// A documented precondition of an operation does not hold.
    #[error("precondition: {0}")]
    Precondition(String),
    /// The request exceeds an exact-enumeration capacity limit.
    #[error("capacity: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
