use thiserror::Error;

/// Errors raised across the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("rank out of range for {family}: {rank}")]
    RankOutOfRange { family: String, rank: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    /// A resource limit refused the computation; `needed` is the actual requirement.
    #[error("limit exceeded: {what} needs {needed}, limit is {limit}")]
    LimitExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("lattice depth insufficient: need max_codim {needed}, lattice has {available}")]
    InsufficientDepth { needed: usize, available: usize },

    /// Two routes that must agree produced different answers.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("characteristic polynomial does not factor over positive integers: {0}")]
    Factorization(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
