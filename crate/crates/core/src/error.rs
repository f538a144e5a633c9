use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic index must be at least 1, got {0}")]
    InvalidFieldIndex(u32),
    #[error("field mismatch: Q(zeta_{left}) vs Q(zeta_{right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial context mismatch")]
    ContextMismatch,
    #[error("invalid variable list: {0}")]
    InvalidContext(String),
    #[error("invalid permutation of {slots} variable slots")]
    InvalidPermutation { slots: usize },
    #[error("polynomial is not linear in the distinguished variable")]
    NotLinear,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("polynomial is not invariant: {0}")]
    NotInvariant(String),
    #[error("bad generator: {0}")]
    BadGenerator(String),
    #[error("internal divisibility failure: {0}")]
    InternalDivisibilityFailure(String),
    #[error("map is not adequate: {0}")]
    NotAdequate(String),
    #[error("{0} is not a prime greater than 3")]
    InvalidPrime(u64),
    #[error("{0} is not an odd integer greater than 3")]
    InvalidOddExponent(u64),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

/// A syntax or name-resolution error, with the byte offset where it occurred.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}
