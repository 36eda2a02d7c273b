use thiserror::Error;

use crate::matrix::Matrix;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("unsupported matrix dimension {0}")]
    UnsupportedDimension(usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    Singular,

    #[error("bracket of generators {a} and {b} leaves their span")]
    NotClosed { a: usize, b: usize, residual: Box<Matrix> },

    #[error("generators are linearly dependent: rank {rank} of {count}")]
    LinearlyDependent { rank: usize, count: usize },

    #[error("unsupported signature ({p},{q})")]
    UnsupportedSignature { p: usize, q: usize },

    #[error("operator {op} does not act on signature ({p},{q})")]
    SignatureMismatch { op: String, p: usize, q: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("generated group exceeded {0} elements")]
    ClosureExceeded(usize),

    #[error("construction failed for generator ({i},{j}): {reason}")]
    Construction { i: usize, j: usize, reason: String },

    #[error("sub-algebra not closed: bracket of Λ{a} and Λ{b} leaves the span")]
    ClosureFailure { a: usize, b: usize },

    #[error("block mismatch for Λ{k} at entry ({row},{col})")]
    BlockMismatch { k: usize, row: usize, col: usize },

    #[error("operator is not diagonalized by its eigenvector matrix: entry ({row},{col})")]
    NotDiagonal { row: usize, col: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
