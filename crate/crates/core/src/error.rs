use thiserror::Error;

/// Errors reported by the library layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} does not fit in 64 bits")]
    Overflow { p: u64, m: u32 },
    #[error("element code {code} is outside the field of order {q}")]
    ElementOutOfRange { code: u64, q: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("q = {q} is outside the supported range {min}..={max}")]
    OrderOutOfRange { q: u64, min: u64, max: u64 },
    #[error("parameter {0} is not a conic parameter")]
    BadParameter(u32),
    #[error("parameter {0} is used twice")]
    DuplicateParameter(u32),
    #[error("the subset is not almost complete")]
    NotAlmostComplete,
    #[error("exhaustive search at q = {q} exceeds the ceiling {ceiling}; pass force to override")]
    AboveCeiling { q: u64, ceiling: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("q = {q} is below the minimum {min}")]
    OrderTooSmall { q: u64, min: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("instance too large: size {needed} exceeds the budget {budget}")]
    TooLarge { needed: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
