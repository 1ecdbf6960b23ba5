use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring: {0}")]
    Ring(String),
    #[error("{0}")]
    Zero(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("Laurent evaluation at zero undefined")]
    LaurentAtZero,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("index {index} out of range for rank {rank}")]
    BadIndex { index: usize, rank: usize },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("not Laurent: denominator factor {0}")]
    NotLaurent(String),
    #[error("exchange matrix: {0}")]
    Matrix(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
