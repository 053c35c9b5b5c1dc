use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("basis is singular")]
    SingularBasis,
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("no common quotient: {0}")]
    NoCommonQuotient(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
