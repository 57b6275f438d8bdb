use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation was applied to an enclosure on which it is not defined
    /// (zero-crossing divisor, non-positive log argument, t < 2, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument lies outside the range on which a bound or table is valid.
    #[error("range error: {0}")]
    Range(String),

    /// The request would exceed the configured memory budget.
    #[error("resource error: {0}")]
    Resource(String),

    /// Two quantities could not be separated even at the maximum working
    /// precision and are not provably equal.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// A structural invariant required by the operation does not hold
    /// (e.g. exponents not non-increasing).
    #[error("structure error: {0}")]
    Structure(String),

    /// A persisted artifact (sieve cache, checkpoint) is malformed.
    #[error("format error: {0}")]
    Format(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
