use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcxError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("d^{n} is not zero")]
    NotNilpotent { n: usize },
    #[error("assumption violated: {0}")]
    Assumption(String),
    #[error("relation {relation} fails at level {level} (i={i}, j={j})")]
    RelationFailure {
        relation: &'static str,
        level: usize,
        i: usize,
        j: usize,
    },
    #[error("vector is not in the subspace")]
    NotMember,
    #[error("B is not contained in Z")]
    NotSubspace,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("degree {degree} with m={m} lies outside the validity window")]
    OutsideWindow { degree: i64, m: usize },
    #[error("not exact: {0}")]
    NotExact(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, NcxError>;
