use thiserror::Error;

/// Errors produced by the transform, generators, measure and experiment runners.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("invalid length {0}: switch sequences need a positive even length")]
    InvalidLength(usize),

    #[error("too many switches: {switches} requested but each half only has {half} positions")]
    TooManySwitches { switches: usize, half: usize },

    #[error("invalid switch spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
