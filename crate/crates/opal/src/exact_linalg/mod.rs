//! Exact scalar arithmetic and sparse linear algebra.
//!
//! Everything downstream (homology, quotients, solving for preimages) runs
//! through this module, over ℚ or a machine-word prime field.

mod decompose;
mod matrix;
mod scalar;

pub use decompose::{decompose, quotient_basis, rank, Decomposition, Quotient, Solver};
pub use matrix::{SparseMatrix, SparseVec, SubspaceBasis};
pub use scalar::{is_prime_u64, rational_content, sign, Scalar, ScalarDomain};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("scalar domain mismatch: {left} vs {right}")]
    DomainMismatch {
        left: ScalarDomain,
        right: ScalarDomain,
    },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("vectors are linearly dependent")]
    DependentVectors,
}
