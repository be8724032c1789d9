use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("expected a {expected}-bit word, got {actual} bits")]
    BitLength { expected: usize, actual: usize },

    #[error("invalid activation pattern: {0}")]
    Sap(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid permutation: {0}")]
    Permutation(String),

    #[error("invalid phase sequence set: {0}")]
    PhaseSequence(String),

    #[error("polynomial with taps {taps:#x} of degree {degree} is not primitive (period {period})")]
    NotPrimitive { degree: u32, taps: u32, period: usize },

    #[error("no primitive polynomial in the built-in table for degree {0}")]
    NoPolynomial(u32),

    #[error("invalid trial plan: {0}")]
    Plan(String),

    #[error("CCDF level {target} is not resolvable: {reason}")]
    Unresolvable { target: f64, reason: String },

    #[error("malformed document: {0}")]
    Format(String),
}
