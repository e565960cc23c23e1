use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid base: q-exponent k must be nonzero")]
    InvalidBase,
    #[error("division by zero")]
    DivideByZero,
    #[error("pole at q = {point}")]
    PoleAtPoint { point: String },
    #[error("pole at q = {point} in the grade-{grade} exponent")]
    PoleAtGrade { point: String, grade: usize },
    #[error("invalid order {order}: must lie in {min}..={max}")]
    InvalidOrder { order: usize, min: usize, max: usize },
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("series is not invertible: constant term is not the identity")]
    NotInvertible,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
