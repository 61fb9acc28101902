//! opal: exact computational homological algebra for algebras over operads.
//!
//! The crate computes, with exact arithmetic over ℚ or a prime field:
//!
//! * homology of bounded chain complexes ([`complexes`]),
//! * classical homology theories of discrete algebras: Chevalley-Eilenberg,
//!   Leibniz/Loday, Hochschild and Connes cyclic ([`homology_theories`]),
//! * structure-constant algebras with ideals, perfect radicals, universal
//!   central extensions ([`algebra_core`]), and the matrix families
//!   gl_n(R), sl_n(R) with Steinberg relation checks ([`matrix_families`]),
//! * truncated operads, free operads on trees and free algebras with
//!   symmetric-group coinvariants ([`operad_kit`]),
//! * quasi-free presentations, the universal acyclic telescope and its cone,
//!   π₀-level plus-construction and the Hurewicz comparison map
//!   ([`plus_construction`]).
//!
//! Data-parallel kernels run on rayon when the `parallel` feature (default)
//! is enabled, with a sequential fallback that produces bitwise identical
//! output; see [`par`].

pub mod algebra_core;
pub mod complexes;
pub mod exact_linalg;
pub mod homology_theories;
pub mod matrix_families;
pub mod operad_kit;
pub mod par;
pub mod plus_construction;
