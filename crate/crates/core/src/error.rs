use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("lag {lag} out of range for length {len}")]
    LagOutOfRange { lag: usize, len: usize },

    #[error("lag {lag} has no exact evaluation for length {len}")]
    UnsupportedExactLag { lag: usize, len: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("{k} does not divide {len}")]
    NotADivisor { k: usize, len: usize },

    #[error("{0} is not in the compressed alphabet of ratio {1}")]
    NotInAlphabet(crate::exactmath::GaussInt, usize),

    #[error("not a Legendre pair (first failing lag {0})")]
    NotLegendrePair(usize),

    #[error("pair is not in canonical balance form: {0}")]
    NotCanonical(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
