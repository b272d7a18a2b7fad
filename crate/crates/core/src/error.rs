use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("ambient group mismatch: {0}")]
    AmbientMismatch(String),

    #[error("not a prime: {0}")]
    NotPrime(u64),

    #[error("presentation defines an infinite group ({free_rank} free generators)")]
    InfiniteGroup { free_rank: usize },

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("field specification is not normalized: {0}")]
    NotNormalized(String),

    #[error("invalid ramification argument: {0}")]
    InvalidRamificationIndex(String),

    #[error("insufficient truncation level: {0}")]
    Level(String),

    #[error("oracle data is corrupted: {0}")]
    OracleCorruption(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u64, cap: u64 },

    #[error("prime {0} divides the discriminant of the polynomial")]
    RamifiedPrime(u64),

    #[error("prime {p} is ramified in the field of conductor {conductor}")]
    RamifiedInField { p: u64, conductor: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
