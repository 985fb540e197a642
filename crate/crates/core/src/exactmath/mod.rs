//! The arithmetic substrate: exact rational scalars, sparse multivariate
//! polynomials with a fixed graded-lex term order, and dense exact matrices
//! with fraction-free rank.

mod matrix;
mod poly;
mod rational;
mod system;

pub use matrix::{PolyMatrix, RationalMatrix};
pub use poly::{Ambient, Monomial, ParseError, Poly};
pub use rational::Rational;
pub use system::{PolySystem, SystemMetadata};

use thiserror::Error;

/// Errors of the arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    InvalidMinorSize { size: usize, rows: usize, cols: usize },
    #[error("ambient mismatch: expected {expected} coordinates, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("the zero polynomial has no leading form")]
    ZeroPolynomial,
}
