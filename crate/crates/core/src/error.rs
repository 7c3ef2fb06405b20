use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("prime {prime} is too small for degree {degree} (need p >= d + 2)")]
    PrimeTooSmall { prime: u32, degree: u32 },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("ambient dimension {0} is too small (need n >= 3)")]
    DimensionTooSmall(usize),

    #[error("lines are not skew (span has projective dimension {0})")]
    NotSkew(usize),

    #[error("degenerate component: {0}")]
    DegenerateComponent(String),

    #[error("component position not covered by the residual/trace rules: {0}")]
    UnrecognizedPosition(String),

    #[error("intersection with the quadric is not defined over the prime field")]
    IrrationalIntersection,

    #[error("({n}, {d}) is outside the stated range: {reason}")]
    OutOfStatedRange { n: usize, d: usize, reason: String },

    #[error("integer overflow while computing {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
