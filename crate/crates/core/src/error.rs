use thiserror::Error;

/// Errors raised by the octoperm library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is even; only odd characteristic is supported")]
    EvenCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field order {0} is too large for table-based arithmetic")]
    FieldTooLarge(u64),
    #[error("modulus is not a monic polynomial of degree {0}")]
    BadModulus(u32),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("too many variables: {0} (at most {max})", max = crate::mpoly::MAX_VARS)]
    TooManyVariables(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported field order q = {0}")]
    UnsupportedOrder(u64),
    #[error("Gröbner computation inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
