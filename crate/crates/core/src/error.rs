use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("n must be odd and at least 1 (got {0})")]
    EvenLength(usize),
    #[error("constant term is not a unit")]
    NonUnitConstant,
    #[error("polynomial {0} does not divide x^{1}-1")]
    NotAFactor(String, usize),
    #[error("polynomial {0} is reducible")]
    Reducible(String),
    #[error("m = {m} is not a unit modulo factor f{index}")]
    NonUnitM { index: usize, m: String },
    #[error("type {tag} is not available over M2(Z2)")]
    InvalidTypeForRing { tag: String },
    #[error("assignment has {got} types but x^{n}-1 has {expected} factors")]
    AssignmentLength {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("zero code has no minimum weight")]
    ZeroCode,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
