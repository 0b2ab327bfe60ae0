use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input size n={n} outside supported range 1..={max}")]
    Size { n: usize, max: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("dimension mismatch: expected {expected} bits, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("system underdetermined: rank {rank} < {n}")]
    Underdetermined { rank: usize, n: usize },

    #[error("function has a nontrivial self-shift {0:#x}; hidden shift is not unique")]
    IllPosed(u64),

    #[error("amplitude amplification impossible: good-outcome probability is zero")]
    ImpossibleAmplification,

    #[error("query budget of {budget} exhausted at rank {rank}")]
    Budget { budget: u64, rank: usize },

    #[error("promise violated: sample contradicts earlier equations")]
    PromiseViolation,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("insufficient coverage: need at least {needed} distinct n, got {got}")]
    InsufficientCoverage { needed: usize, got: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
