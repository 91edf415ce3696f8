//! Dense matrices over the exact rings of [`crate::ring`], with
//! fraction-free elimination, characteristic polynomials and truncated
//! matrix exponentials.

mod charpoly;
mod elim;
mod exp;
mod matrix;
mod serial;

use thiserror::Error;

pub use charpoly::{char_poly, CharPoly};
pub use elim::{
    determinant, fraction_free_rref, fraction_free_rref_partial, generic_rank, left_kernel, rank,
    rank_at, right_kernel, row_space_basis, solve_right, FractionFreeRref, GenericRank, Solution,
};
pub use exp::mat_exp_truncated;
pub use matrix::Matrix;
pub use serial::{parse_matrix, MatrixEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix of shape {0:?} is not square")]
    NotSquare((usize, usize)),
    #[error("system is inconsistent (row {row}, right-hand column {col})")]
    NoSolution { row: usize, col: usize },
    #[error("entry ({row},{col}) has a nonzero constant term")]
    NonzeroConstantTerm { row: usize, col: usize },
    #[error("malformed matrix: {0}")]
    Malformed(String),
}
