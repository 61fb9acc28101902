//! The π₀-level plus-construction and the universal acyclic telescope
//! machinery: quasi-free presentations, O-trees, cones, cofibers and the
//! Hurewicz comparison map.

pub mod hurewicz;
pub mod otree;
pub mod presentation;

pub use hurewicz::{hurewicz, HurewiczReport};
pub use otree::{
    cofiber_presentation, cone_presentation, otree_telescope, pi0_modulo_images, EvenVertex, OTree,
    OddVertex, Telescope, TelescopeMap,
};
pub use presentation::{FormalElement, FormalTerm, Pi0Report, QuasiFreePresentation};

use thiserror::Error;

use crate::algebra_core::{
    indecomposables, perfect_radical, quotient, AlgebraError, StructureConstantAlgebra,
};
use crate::complexes::ComplexError;
use crate::exact_linalg::LinalgError;
use crate::operad_kit::OperadError;

#[derive(Debug, Error)]
pub enum PlusError {
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("generator {name} has negative degree {degree}")]
    NegativeDegree { name: String, degree: i64 },
    #[error("differential of {generator} has degree {got}, expected {expected}")]
    DifferentialDegree {
        generator: String,
        expected: i64,
        got: i64,
    },
    #[error("d² is nonzero on generator {generator} within the truncation")]
    DifferentialSquare { generator: String },
    #[error("malformed O-tree: {0}")]
    BadTree(String),
    #[error("tree has half-depth {depth}, telescope needs r_max = {r_max}")]
    TreeTooShallow { depth: usize, r_max: usize },
    #[error("map does not commute with the differential on generator {generator}")]
    NotChainMap { generator: String },
    #[error("operation requires a weight-graded (linear) differential")]
    NotWeightGraded,
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The π₀-level plus-construction of a discrete algebra: the quotient by
/// its perfect radical. The result has zero perfect radical and the same
/// space of indecomposables.
pub fn plus_pi0(a: &StructureConstantAlgebra) -> Result<StructureConstantAlgebra, AlgebraError> {
    let radical = perfect_radical(a)?;
    Ok(quotient(a, &radical)?.0)
}

/// Indecomposables dimension, for the plus-construction invariants.
pub fn indecomposables_dim(a: &StructureConstantAlgebra) -> Result<usize, AlgebraError> {
    Ok(indecomposables(a)?.dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::tests_support::{sl2, two_dim_solvable};
    use crate::algebra_core::AlgebraKind;
    use crate::exact_linalg::ScalarDomain;
    use crate::matrix_families::{gl, rings, MatrixAlgebraSpec};

    #[test]
    fn plus_of_gl2_is_one_dimensional() {
        let spec = MatrixAlgebraSpec::new(rings::rationals(), 2, AlgebraKind::Lie).unwrap();
        let g = gl(&spec).unwrap();
        let plus = plus_pi0(&g).unwrap();
        assert_eq!(plus.dim(), 1);
    }

    #[test]
    fn plus_of_abelian_is_identity() {
        let a = StructureConstantAlgebra::abelian(AlgebraKind::Lie, ScalarDomain::Rational, 3);
        assert_eq!(plus_pi0(&a).unwrap().dim(), 3);
    }

    #[test]
    fn plus_of_perfect_is_zero() {
        assert_eq!(plus_pi0(&sl2()).unwrap().dim(), 0);
    }

    #[test]
    fn plus_laws() {
        for a in [
            sl2(),
            two_dim_solvable(),
            StructureConstantAlgebra::abelian(AlgebraKind::Lie, ScalarDomain::Rational, 4),
        ] {
            let plus = plus_pi0(&a).unwrap();
            // P(A / P(A)) = 0
            assert_eq!(perfect_radical(&plus).unwrap().dim(), 0);
            // indecomposables dimension preserved
            assert_eq!(
                indecomposables_dim(&a).unwrap(),
                indecomposables_dim(&plus).unwrap()
            );
            // idempotence
            assert_eq!(plus_pi0(&plus).unwrap().dim(), plus.dim());
        }
    }
}
