use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RoapError {
    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("index out of range: {0}")]
    IndexError(String),
    #[error("scan hint contract violated: {0}")]
    ContractViolation(String),
    #[error("empty edge range for vertices ({0}, {1})")]
    EmptyRange(usize, usize),
    #[error("instance has {n} vertices, brute force is capped at {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("value {0} cannot be represented in exact integer mode")]
    NotExact(f64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, RoapError>;
