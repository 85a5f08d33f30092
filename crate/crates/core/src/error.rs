use thiserror::Error;

use crate::algebra::ThreeCycle;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotBijection(String),

    #[error("invalid transposition rho({i},{j},{k}) for length {n}")]
    IndexViolation { i: usize, j: usize, k: usize, n: usize },

    #[error("ground set mismatch: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("3-cycle {0} is not applicable")]
    NotApplicable(ThreeCycle),

    #[error("segment of even length {0}")]
    EvenSegment(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("search budget exhausted (distance in [{lower}, {upper}])")]
    Timeout { lower: usize, upper: usize },

    #[error("table file: {0}")]
    TableFormat(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
