use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Partition text could not be parsed; carries the offending token.
    #[error("invalid partition token {token:?}: {reason}")]
    PartitionParse { token: String, reason: String },

    /// A parameter violated its domain (e.g. e = 0, zero modulus exponent).
    #[error("invalid parameter: {0}")]
    Domain(String),

    /// A parameter that must be prime is not.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// An operation that needs a non-trivial module got the empty partition.
    #[error("trivial module: the empty partition has no invariants here")]
    TrivialModule,

    /// Truncated coefficients cannot resolve the requested computation.
    #[error("insufficient precision: need K >= {required}, got K = {actual}")]
    Precision { required: u32, actual: u32 },

    /// A polynomial failed the Eisenstein criterion.
    #[error("not an Eisenstein polynomial: {0}")]
    NotEisenstein(String),

    /// Ring rank e*d exceeds the supported dense-matrix budget.
    #[error("ring rank {rank} exceeds the supported limit of {limit}")]
    DimensionOverflow { rank: usize, limit: usize },

    /// Integer overflow while deriving a parameter (e.g. e = (p-1)p^(m-1)).
    #[error("parameter overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
