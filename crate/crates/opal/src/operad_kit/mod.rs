//! Truncated Σ-modules and operads: classical operads, the free operad on
//! labeled trees, free algebras as symmetric-group coinvariants, a
//! May-axiom checker, and the admissibility probe.

pub mod admissibility;
pub mod classical;
pub mod free_algebra;
pub mod free_operad;
pub mod operad;
pub mod sigma;
pub(crate) mod words;

pub use admissibility::{admissibility_probe, AdmissibilityVerdict};
pub use classical::{classical_operad, ClassicalOperad};
pub use free_algebra::{free_algebra_dims, FreeAlgebra};
pub use free_operad::{free_operad, LabeledTree};
pub use operad::OperadTruncation;
pub use sigma::{SigmaComponent, SigmaModuleTruncation};

use thiserror::Error;

/// Operad data is truncated; these are the hard caps. Anything beyond
/// raises an explicit error instead of silently wrapping.
pub const ARITY_HARD_BOUND: usize = 6;
pub const DEGREE_HARD_BOUND: i64 = 8;

#[derive(Debug, Error)]
pub enum OperadError {
    #[error("arity {arity} outside the truncation bound {bound}")]
    ArityOutOfRange { arity: usize, bound: usize },
    #[error("degree {degree} outside the truncation bound {bound}")]
    DegreeOutOfRange { degree: i64, bound: i64 },
    #[error("Coxeter relation {relation} fails in arity {arity}")]
    CoxeterViolation { arity: usize, relation: String },
    #[error("action data malformed in arity {arity}: expected {expected}, got {got}")]
    BadActionData {
        arity: usize,
        expected: usize,
        got: usize,
    },
    #[error("May axiom violated ({law}): {detail}")]
    MayViolation { law: String, detail: String },
    #[error("no composition table for O({m}) ∘_{slot} O({k})")]
    MissingComposition { m: usize, k: usize, slot: usize },
    #[error("unknown classical operad: {0}")]
    UnknownOperad(String),
    #[error("Lie basis rank mismatch in arity {arity}: expected {expected}, got {got}")]
    LieBasisRank {
        arity: usize,
        expected: usize,
        got: usize,
    },
    #[error("operad has no evaluation model for algebras")]
    NoEvaluationModel,
    #[error(transparent)]
    Linalg(#[from] crate::exact_linalg::LinalgError),
}
