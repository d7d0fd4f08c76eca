//! Sparse multivariate polynomials over exact fields.

mod monomial;
mod sparse;
mod text;

pub use monomial::{Monomial, MonomialOrdering, OrderKind};
pub use sparse::{sphere_polynomial, SparsePoly};
pub use text::parse_poly;

use thiserror::Error;

use crate::exact::{ExactError, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("arity mismatch: {0} vs {1} variables")]
    Arity(usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("variable index {0} out of range for {1} variables")]
    VariableIndex(usize, usize),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
