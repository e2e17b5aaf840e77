use thiserror::Error;

/// Errors surfaced by the exact evaluators and experiment drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {modulus}")]
    NotInvertible { a: i64, modulus: u64 },

    #[error("moduli {a} and {b} are not coprime")]
    ModuliNotCoprime { a: u64, b: u64 },

    #[error("cyclotomic order {order} exceeds the cap {cap}")]
    OrderOverflow { order: u128, cap: u64 },

    #[error("evaluation cost {cost} exceeds the cap {cap}")]
    CapExceeded { cost: u128, cap: u128 },

    #[error("frequency arguments m1, m2, n1, n2 must be nonzero")]
    ZeroFrequency,

    #[error("invalid moduli decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("{value} is not a prime power compatible with its partner modulus")]
    NotPrimePower { value: u64 },

    #[error("argument {a} must be coprime to modulus {modulus}")]
    CoprimalityViolated { a: i64, modulus: u64 },

    #[error("invalid divisor arguments: {0}")]
    InvalidDivisors(String),

    #[error("window parameters out of range: {0}")]
    InvalidHRange(String),

    #[error("coefficient at {index:?} has modulus {abs} > 1")]
    CoefficientBound { index: (u64, u64), abs: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("definitions disagree: {0}")]
    DefinitionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
