use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition {0:?} is not strictly decreasing with positive parts")]
    NotRegular(Vec<i64>),
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("rank mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("coefficient kinds differ")]
    CoeffKindMismatch,
    #[error("invalid group element window {0:?}")]
    InvalidWindow(Vec<i32>),
    #[error("position {position} out of range for column of height {height}")]
    PositionOutOfRange { position: usize, height: usize },
    #[error("denominator factor vanishes at the evaluation point")]
    EvaluationPole,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("columns are not adjacent: {0}")]
    AdjacencyViolation(String),
    #[error("polynomial is not invariant under the Weyl group: {0}")]
    SymmetryViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
