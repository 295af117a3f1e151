use thiserror::Error;

/// Errors raised by sequence construction, parsing and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("period mismatch: expected {expected}, found {found}")]
    PeriodMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("({p}, {q}) is not a twin-prime pair")]
    NotTwinPrime { p: u64, q: u64 },

    #[error("polynomial {poly:#x} is not primitive of degree {degree}: generated period {period}, expected {expected}")]
    NotPrimitive {
        degree: u32,
        poly: u64,
        period: u64,
        expected: u64,
    },

    #[error("{den} has no inverse modulo {modulus} (gcd != 1)")]
    NotInvertible { den: i64, modulus: u64 },

    #[error("inner period {0} is even; the period-4N construction needs an odd period")]
    EvenPeriod(usize),

    #[error("regime hypothesis violated at column {column}: {detail}")]
    HypothesisViolated { column: usize, detail: String },

    #[error("period {requested} exceeds the search budget of {limit}")]
    BudgetExceeded { requested: usize, limit: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
