use thiserror::Error;

/// Errors surfaced by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("operation requires positive characteristic")]
    WrongCharacteristic,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("colon ideal by zero requested")]
    ZeroDivisorQuery,
    #[error("forcing data is empty")]
    EmptyData,
    #[error("witness identity does not re-expand: {0}")]
    InvalidWitness(String),
    #[error("presentation map mismatch: {0}")]
    MapMismatch(String),
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("multiplier is zero in the presented ring")]
    ZeroMultiplier,
    #[error("monomial exponent overflow")]
    ExponentOverflow,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("membership in (I, X^m) never stabilized below the cap m = {cap}; h may lie in the localized ideal only")]
    AscensionCapExceeded { cap: u32 },
    #[error("internal invariant violated: separating linear system inconsistent")]
    LinearSystemInconsistent,
}

pub type Result<T> = std::result::Result<T, Error>;
