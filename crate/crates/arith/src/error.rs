use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("valuation of zero is undefined")]
    ZeroArgument,
    #[error("base must exceed 1, got {0}")]
    BadBase(String),
    #[error("{a} is not coprime to modulus {m}")]
    NotCoprime { a: String, m: String },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("U^2+U+1 has no root modulo {0}: need a prime congruent to 1 mod 3")]
    NoCubicRoot(u64),
    #[error("exponent must be positive")]
    ZeroExponent,
}
