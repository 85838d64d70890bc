use thiserror::Error;

/// Errors surfaced by the polynomial kernel, the engine and the benchmark
/// front end. Structural misuse (dimension mismatches, invalid divisions)
/// is reported here rather than by panicking so the CLI can map failures
/// to exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),

    #[error("monomial quotient is undefined: divisor does not divide")]
    NonDivisor,

    #[error("exponent overflow during monomial multiplication")]
    ExponentOverflow,

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic {0} out of range (need 2 < p < 2^31)")]
    CharOutOfRange(u64),

    #[error("input system is empty")]
    EmptyInput,

    #[error("new generator lies in the ideal of the current basis")]
    MemberOfIdeal,

    #[error("monomial orders differ between operands")]
    OrderMismatch,

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("critical pair ceiling of {0} exceeded")]
    PairLimitExceeded(u64),

    #[error("computation timed out")]
    Timeout,

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
