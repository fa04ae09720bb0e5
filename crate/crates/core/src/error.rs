use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },

    #[error("problem size {size} exceeds the oracle size guard {limit} (set FLAGCOH_SIZE_GUARD to raise it)")]
    SizeGuard { size: usize, limit: usize },

    #[error("conjectural recursion left its domain at c_{j}({a},{b}) in characteristic {p}")]
    ConjectureDomain { p: u64, a: i64, b: i64, j: i64 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not homogeneous (degrees {0} and {1})")]
    Inhomogeneous(i64, i64),

    #[error("quotient is not Artinian: no pure power of x{0} among the generators")]
    NotArtinian(usize),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
