use thiserror::Error;

/// Upper limit on the arity of materialized truth tables and exhaustive scans.
pub const MAX_ARITY: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("arity {0} exceeds the materialization cap of {MAX_ARITY}")]
    ArityCap(usize),
    #[error("truth table length {got} does not match 2^{arity}")]
    TableLength { arity: usize, got: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid representation: {0}")]
    InvalidRepr(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("representation is ill-defined at input index {0}")]
    IllDefined(u64),
    #[error("construction invariant violated: {0}")]
    Invariant(String),
    #[error("search budget of {0} candidate evaluations exhausted")]
    BudgetExhausted(u64),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
