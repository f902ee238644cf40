use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("invalid minor: {0}")]
    InvalidMinor(String),

    #[error("invalid primitive ratio: {0}")]
    InvalidPrimitive(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("term cap exceeded: more than {cap} monomials")]
    TermCap { cap: usize },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("time budget exceeded after {seconds} s")]
    Budget { seconds: u64 },

    #[error("point does not satisfy the cone system: {0}")]
    NotInCone(String),

    #[error("vector fails ST0 at position {position}")]
    NotSt0 { position: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
