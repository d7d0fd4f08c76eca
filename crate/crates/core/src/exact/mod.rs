//! Exact arithmetic: scalars over `Q` and `Q(sqrt d)`, dense matrices, and
//! integer lattice routines (Hermite normal form, fraction-free elimination).

mod integer;
mod matrix;
mod scalar;

pub use integer::{bareiss_det_int, hnf_i64_rows, hnf_int, IntEchelon};
pub use matrix::{ExactMatrix, FieldEchelon};
pub use scalar::{Field, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("unsupported radicand {0}; expected one of 2, 3, 5")]
    UnsupportedRadicand(u32),
    #[error("operation requires a quadratic field")]
    NotQuadratic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive definite (pivot {0} is not positive)")]
    NotPositiveDefinite(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("entry ({0}, {1}) is not an integer")]
    NonInteger(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}
