//! Matrix algebra families over an associative base ring: gl_n(R), the
//! trace to R/[R,R], sl_n(R) as its kernel, and verification that the
//! universal central extension of sl_n(R) realizes the Steinberg relations.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra_core::{
    kernel_of, quotient, square_ideal, AlgebraError, AlgebraKind, AlgebraMorphism,
    CentralExtension, Ideal, StructureConstantAlgebra,
};
use crate::exact_linalg::{
    decompose, ScalarDomain, Solver, SparseMatrix, SparseVec, SubspaceBasis,
};

#[derive(Debug, Error)]
pub enum MatrixFamilyError {
    #[error("matrix size must be at least 2, got {0}")]
    SizeTooSmall(usize),
    #[error("Steinberg relations need n >= 3, got {0}")]
    SteinbergNeedsThree(usize),
    #[error("base ring must be associative")]
    BaseNotAssociative,
    #[error("base ring must be unital for this operation")]
    BaseNotUnital,
    #[error("target kind must be lie or leibniz")]
    BadTargetKind,
    #[error("extension does not map onto sl of this spec")]
    ExtensionMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Parameters for a matrix algebra construction: the associative base ring
/// R, the matrix size n >= 2, and whether the bracket algebra is viewed as
/// a Lie or a Leibniz algebra.
#[derive(Clone)]
pub struct MatrixAlgebraSpec {
    pub base: StructureConstantAlgebra,
    pub n: usize,
    pub kind: AlgebraKind,
}

impl MatrixAlgebraSpec {
    pub fn new(
        base: StructureConstantAlgebra,
        n: usize,
        kind: AlgebraKind,
    ) -> Result<Self, MatrixFamilyError> {
        if base.kind() != AlgebraKind::Associative {
            return Err(MatrixFamilyError::BaseNotAssociative);
        }
        if n < 2 {
            return Err(MatrixFamilyError::SizeTooSmall(n));
        }
        if kind == AlgebraKind::Associative {
            return Err(MatrixFamilyError::BadTargetKind);
        }
        Ok(MatrixAlgebraSpec { base, n, kind })
    }

    fn dim_r(&self) -> usize {
        self.base.dim()
    }

    /// Basis index of e_{pq} ⊗ r_k inside gl.
    pub fn gl_index(&self, p: usize, q: usize, k: usize) -> usize {
        (p * self.n + q) * self.dim_r() + k
    }

    /// The element r·e_{ij} of gl for a coefficient vector r in R.
    pub fn elementary(&self, i: usize, j: usize, r: &SparseVec) -> SparseVec {
        let dim = self.n * self.n * self.dim_r();
        let entries = r
            .entries()
            .iter()
            .map(|(k, c)| (self.gl_index(i, j, *k), c.clone()));
        SparseVec::from_entries(dim, entries).expect("entries valid")
    }
}

/// The bracket algebra gl_n(R) with basis e_{pq} ⊗ r_k and
/// [a, b] = ab - ba computed from the structure constants of R.
pub fn gl(spec: &MatrixAlgebraSpec) -> Result<StructureConstantAlgebra, MatrixFamilyError> {
    let n = spec.n;
    let dr = spec.dim_r();
    let dim = n * n * dr;
    let domain = spec.base.domain();
    let mut labels = Vec::with_capacity(dim);
    for p in 0..n {
        for q in 0..n {
            for k in 0..dr {
                labels.push(format!("e{}{}.{}", p + 1, q + 1, spec.base.labels()[k]));
            }
        }
    }
    let mut products: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for p in 0..n {
        for q in 0..n {
            for u in 0..n {
                for v in 0..n {
                    if q != u && v != p {
                        continue;
                    }
                    for a in 0..dr {
                        for b in 0..dr {
                            let mut entries: Vec<(usize, _)> = Vec::new();
                            if q == u {
                                // e_pq a · e_uv b = e_pv ⊗ ab
                                for (k, c) in spec.base.basis_product(a, b).entries() {
                                    entries.push((spec.gl_index(p, v, *k), c.clone()));
                                }
                            }
                            if v == p {
                                // - e_uv b · e_pq a = - e_uq ⊗ ba
                                for (k, c) in spec.base.basis_product(b, a).entries() {
                                    entries.push((spec.gl_index(u, q, *k), -c.clone()));
                                }
                            }
                            let vsum = SparseVec::from_entries(dim, entries)
                                .expect("bracket entries valid");
                            if !vsum.is_zero() {
                                products
                                    .insert((spec.gl_index(p, q, a), spec.gl_index(u, v, b)), vsum);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(StructureConstantAlgebra::new(
        spec.kind, domain, labels, products,
    )?)
}

/// The trace morphism gl_n(R) → R/[R,R] (an abelian algebra of the same
/// kind), sending e_{pp} ⊗ r to the class of r.
pub fn trace_map(
    spec: &MatrixAlgebraSpec,
    gl_algebra: &StructureConstantAlgebra,
) -> Result<AlgebraMorphism, MatrixFamilyError> {
    let (target, proj) = commutator_quotient(&spec.base, spec.kind)?;
    let n = spec.n;
    let dr = spec.dim_r();
    let mut triplets = Vec::new();
    for p in 0..n {
        for k in 0..dr {
            let col = proj.column(k);
            for (row, v) in col.entries() {
                triplets.push((*row, spec.gl_index(p, p, k), v.clone()));
            }
        }
    }
    let matrix =
        SparseMatrix::from_triplets(target.dim(), gl_algebra.dim(), spec.base.domain(), triplets)
            .map_err(AlgebraError::from)?;
    Ok(AlgebraMorphism::new(gl_algebra.clone(), target, matrix)?)
}

/// R/[R,R] as an abelian algebra of the given bracket kind, together with
/// the projection matrix from R coordinates.
pub fn commutator_quotient(
    base: &StructureConstantAlgebra,
    kind: AlgebraKind,
) -> Result<(StructureConstantAlgebra, SparseMatrix), MatrixFamilyError> {
    // R with the commutator bracket is a Lie algebra; [R,R] is its square
    let commutator = commutator_algebra(base, kind)?;
    let whole = Ideal::whole(&commutator);
    let bracket_span = square_ideal(&commutator, &whole)?;
    let (quotient_algebra, surjection) = quotient(&commutator, &bracket_span)?;
    Ok((quotient_algebra, surjection.matrix))
}

/// The base ring viewed as a bracket algebra: [a, b] = ab − ba.
fn commutator_algebra(
    base: &StructureConstantAlgebra,
    kind: AlgebraKind,
) -> Result<StructureConstantAlgebra, MatrixFamilyError> {
    if base.kind() != AlgebraKind::Associative {
        return Err(MatrixFamilyError::BaseNotAssociative);
    }
    let dim = base.dim();
    let mut products = BTreeMap::new();
    for i in 0..dim {
        for j in 0..dim {
            let v = base
                .basis_product(i, j)
                .axpy(&-base.domain().one(), &base.basis_product(j, i));
            if !v.is_zero() {
                products.insert((i, j), v);
            }
        }
    }
    Ok(StructureConstantAlgebra::new(
        kind,
        base.domain(),
        base.labels().to_vec(),
        products,
    )?)
}

/// sl_n(R): the kernel of the trace, as an algebra plus its inclusion
/// basis inside gl coordinates.
pub struct Sl {
    pub algebra: StructureConstantAlgebra,
    pub gl_algebra: StructureConstantAlgebra,
    pub inclusion: SubspaceBasis,
}

impl Sl {
    /// Solver expressing a gl vector supported on sl in sl coordinates.
    pub fn coordinate_solver(&self) -> Solver {
        let mat = self.inclusion.as_matrix(self.algebra.domain());
        decompose(&mat).solver
    }
}

pub fn sl(spec: &MatrixAlgebraSpec) -> Result<Sl, MatrixFamilyError> {
    let gl_algebra = gl(spec)?;
    let tr = trace_map(spec, &gl_algebra)?;
    let kernel = kernel_of(&tr)?;
    let inclusion = kernel.basis().clone();
    let algebra = gl_algebra.subalgebra(&inclusion)?;
    Ok(Sl {
        algebra,
        gl_algebra,
        inclusion,
    })
}

/// Outcome of checking the Steinberg presentation relations inside a
/// central extension of sl_n(R).
#[derive(Debug, Default)]
pub struct SteinbergReport {
    /// Relation a) failures: (i, j, r-basis, s-basis, m, n).
    pub linearity_failures: Vec<(usize, usize, usize, usize, i64, i64)>,
    /// Relation b) failures: (i, j, k, l, r-basis, s-basis).
    pub disjoint_failures: Vec<(usize, usize, usize, usize, usize, usize)>,
    /// Relation c) failures: (i, j, l, r-basis, s-basis).
    pub composition_failures: Vec<(usize, usize, usize, usize, usize)>,
    pub checked: usize,
}

impl SteinbergReport {
    pub fn all_hold(&self) -> bool {
        self.linearity_failures.is_empty()
            && self.disjoint_failures.is_empty()
            && self.composition_failures.is_empty()
    }
}

/// Lifts the elementary matrices r·e_{ij} through the extension and checks
/// the Steinberg relations exactly:
///
/// a) u_{ij}(m·r + n·s) = m·u_{ij}(r) + n·u_{ij}(s)
/// b) [u_{ij}(r), u_{kl}(s)] = 0 when i ≠ l and j ≠ k
/// c) [u_{ij}(r), u_{kl}(s)] = u_{il}(rs) when i ≠ l and j = k
pub fn steinberg_verify(
    spec: &MatrixAlgebraSpec,
    sl_data: &Sl,
    ext: &CentralExtension,
) -> Result<SteinbergReport, MatrixFamilyError> {
    if spec.n < 3 {
        return Err(MatrixFamilyError::SteinbergNeedsThree(spec.n));
    }
    if spec.base.unit().is_none() {
        return Err(MatrixFamilyError::BaseNotUnital);
    }
    if ext.map.target.dim() != sl_data.algebra.dim() {
        return Err(MatrixFamilyError::ExtensionMismatch);
    }
    let n = spec.n;
    let dr = spec.dim_r();
    let sl_solver = sl_data.coordinate_solver();
    let ext_solver = decompose(&ext.map.matrix).solver;

    // lift of r·e_{ij} (traceless for i != j) into the extension
    let lift = |i: usize, j: usize, r: &SparseVec| -> SparseVec {
        let in_gl = spec.elementary(i, j, r);
        let in_sl = sl_solver
            .solve(&in_gl)
            .expect("off-diagonal elementary matrices are traceless");
        ext_solver.solve(&in_sl).expect("extension maps onto sl")
    };

    let domain = spec.base.domain();
    let basis_r = |k: usize| SparseVec::unit(dr, k, domain.one());
    let mut report = SteinbergReport::default();

    // a) linearity of the lift on a few integer combinations
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for a in 0..dr {
                for b in 0..dr {
                    let (m, nn) = (2i64, -3i64);
                    let combo = basis_r(a)
                        .scale(&domain.from_int(m))
                        .axpy(&domain.from_int(nn), &basis_r(b));
                    let lhs = lift(i, j, &combo);
                    let rhs = lift(i, j, &basis_r(a))
                        .scale(&domain.from_int(m))
                        .axpy(&domain.from_int(nn), &lift(i, j, &basis_r(b)));
                    report.checked += 1;
                    if lhs != rhs {
                        report.linearity_failures.push((i, j, a, b, m, nn));
                    }
                }
            }
        }
    }

    // b) and c): brackets of lifts
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    if k == l {
                        continue;
                    }
                    for a in 0..dr {
                        for b in 0..dr {
                            let x = lift(i, j, &basis_r(a));
                            let y = lift(k, l, &basis_r(b));
                            let bracket = ext.algebra.product(&x, &y);
                            if i != l && j != k {
                                report.checked += 1;
                                if !bracket.is_zero() {
                                    report.disjoint_failures.push((i, j, k, l, a, b));
                                }
                            } else if i != l && j == k {
                                report.checked += 1;
                                let rs = spec.base.basis_product(a, b);
                                let expected = lift(i, l, &rs);
                                if bracket != expected {
                                    report.composition_failures.push((i, j, l, a, b));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Stock associative rings used throughout the test and acceptance suites.
pub mod rings {
    use super::*;

    /// ℚ as a 1-dimensional algebra.
    pub fn rationals() -> StructureConstantAlgebra {
        let domain = ScalarDomain::Rational;
        let mut products = BTreeMap::new();
        products.insert((0, 0), SparseVec::unit(1, 0, domain.one()));
        StructureConstantAlgebra::new(AlgebraKind::Associative, domain, vec!["1".into()], products)
            .expect("field is associative")
    }

    /// The dual numbers ℚ[ε]/ε².
    pub fn dual_numbers() -> StructureConstantAlgebra {
        truncated_poly(2)
    }

    /// ℚ[t]/t^m with basis 1, t, …, t^{m-1}.
    pub fn truncated_poly(m: usize) -> StructureConstantAlgebra {
        assert!(m >= 1);
        let domain = ScalarDomain::Rational;
        let labels = (0..m)
            .map(|i| {
                if i == 0 {
                    "1".to_string()
                } else {
                    format!("t{i}")
                }
            })
            .collect();
        let mut products = BTreeMap::new();
        for i in 0..m {
            for j in 0..m {
                if i + j < m {
                    products.insert((i, j), SparseVec::unit(m, i + j, domain.one()));
                }
            }
        }
        StructureConstantAlgebra::new(AlgebraKind::Associative, domain, labels, products)
            .expect("truncated polynomial ring is associative")
    }

    /// The full matrix ring M_k(ℚ).
    pub fn matrix_ring(k: usize) -> StructureConstantAlgebra {
        let domain = ScalarDomain::Rational;
        let dim = k * k;
        let idx = |p: usize, q: usize| p * k + q;
        let labels = (0..k)
            .flat_map(|p| (0..k).map(move |q| format!("e{}{}", p + 1, q + 1)))
            .collect();
        let mut products = BTreeMap::new();
        for p in 0..k {
            for q in 0..k {
                for v in 0..k {
                    products.insert(
                        (idx(p, q), idx(q, v)),
                        SparseVec::unit(dim, idx(p, v), domain.one()),
                    );
                }
            }
        }
        StructureConstantAlgebra::new(AlgebraKind::Associative, domain, labels, products)
            .expect("matrix ring is associative")
    }

    /// The matrix ring M_k(R) over an associative base ring.
    pub fn matrix_over(
        base: &StructureConstantAlgebra,
        k: usize,
    ) -> Result<StructureConstantAlgebra, AlgebraError> {
        let dr = base.dim();
        let dim = k * k * dr;
        let domain = base.domain();
        let idx = |p: usize, q: usize, a: usize| (p * k + q) * dr + a;
        let labels = (0..k)
            .flat_map(|p| {
                let base_labels = base.labels().to_vec();
                (0..k).flat_map(move |q| {
                    base_labels
                        .clone()
                        .into_iter()
                        .map(move |l| format!("e{}{}.{}", p + 1, q + 1, l))
                })
            })
            .collect();
        let mut products = BTreeMap::new();
        for p in 0..k {
            for q in 0..k {
                for v in 0..k {
                    for a in 0..dr {
                        for b in 0..dr {
                            let ab = base.basis_product(a, b);
                            if ab.is_zero() {
                                continue;
                            }
                            let entries =
                                ab.entries().iter().map(|(c, s)| (idx(p, v, *c), s.clone()));
                            let vsum = SparseVec::from_entries(dim, entries).expect("valid");
                            products.insert((idx(p, q, a), idx(q, v, b)), vsum);
                        }
                    }
                }
            }
        }
        StructureConstantAlgebra::new(AlgebraKind::Associative, domain, labels, products)
    }

    /// Upper-triangular k×k matrices over ℚ.
    pub fn upper_triangular(k: usize) -> StructureConstantAlgebra {
        let domain = ScalarDomain::Rational;
        let mut pairs = Vec::new();
        for p in 0..k {
            for q in p..k {
                pairs.push((p, q));
            }
        }
        let idx: BTreeMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &pq)| (pq, i)).collect();
        let labels = pairs
            .iter()
            .map(|(p, q)| format!("e{}{}", p + 1, q + 1))
            .collect();
        let mut products = BTreeMap::new();
        for &(p, q) in &pairs {
            for &(u, v) in &pairs {
                if q == u {
                    products.insert(
                        (idx[&(p, q)], idx[&(u, v)]),
                        SparseVec::unit(pairs.len(), idx[&(p, v)], domain.one()),
                    );
                }
            }
        }
        StructureConstantAlgebra::new(AlgebraKind::Associative, domain, labels, products)
            .expect("upper triangular matrices are associative")
    }
}

/// Canonical sl_n(ℚ) as a Lie algebra; small helper used in many tests.
pub fn sl_n_q(n: usize) -> Sl {
    let spec = MatrixAlgebraSpec::new(rings::rationals(), n, AlgebraKind::Lie).expect("valid spec");
    sl(&spec).expect("sl over a field")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{perfect_radical, uce};

    #[test]
    fn gl_dimensions_and_identities() {
        let spec = MatrixAlgebraSpec::new(rings::rationals(), 2, AlgebraKind::Lie).unwrap();
        let g = gl(&spec).unwrap();
        assert_eq!(g.dim(), 4);
        let spec_eps = MatrixAlgebraSpec::new(rings::dual_numbers(), 2, AlgebraKind::Lie).unwrap();
        assert_eq!(gl(&spec_eps).unwrap().dim(), 8);
    }

    #[test]
    fn gl_rejects_non_associative_base() {
        let lie = StructureConstantAlgebra::abelian(AlgebraKind::Lie, ScalarDomain::Rational, 2);
        assert!(matches!(
            MatrixAlgebraSpec::new(lie, 2, AlgebraKind::Lie),
            Err(MatrixFamilyError::BaseNotAssociative)
        ));
    }

    #[test]
    fn trace_on_gl2_q() {
        let spec = MatrixAlgebraSpec::new(rings::rationals(), 2, AlgebraKind::Lie).unwrap();
        let g = gl(&spec).unwrap();
        let tr = trace_map(&spec, &g).unwrap();
        // commutative base: target is R itself (dimension 1)
        assert_eq!(tr.target.dim(), 1);
        assert!(tr.is_surjective());
        // tr(e_11) = 1, tr(e_12) = 0
        let e11 = spec.elementary(0, 0, &SparseVec::unit(1, 0, ScalarDomain::Rational.one()));
        let e12 = spec.elementary(0, 1, &SparseVec::unit(1, 0, ScalarDomain::Rational.one()));
        assert!(!tr.matrix.mat_vec(&e11).is_zero());
        assert!(tr.matrix.mat_vec(&e12).is_zero());
    }

    #[test]
    fn trace_target_of_matrix_base() {
        // R = M_2(Q): [R,R] has codimension 1
        let spec = MatrixAlgebraSpec::new(rings::matrix_ring(2), 2, AlgebraKind::Lie).unwrap();
        let g = gl(&spec).unwrap();
        let tr = trace_map(&spec, &g).unwrap();
        assert_eq!(tr.target.dim(), 1);
    }

    #[test]
    fn sl_dimensions() {
        let s = sl_n_q(2);
        assert_eq!(s.algebra.dim(), 3);
        let spec = MatrixAlgebraSpec::new(rings::truncated_poly(2), 3, AlgebraKind::Lie).unwrap();
        let s3 = sl(&spec).unwrap();
        assert_eq!(s3.algebra.dim(), 16); // 18 - 2
    }

    #[test]
    fn sl3_is_perfect() {
        let s = sl_n_q(3);
        assert_eq!(perfect_radical(&s.algebra).unwrap().dim(), s.algebra.dim());
    }

    #[test]
    fn gl2_radical_is_sl2() {
        let spec = MatrixAlgebraSpec::new(rings::rationals(), 2, AlgebraKind::Lie).unwrap();
        let g = gl(&spec).unwrap();
        let rad = perfect_radical(&g).unwrap();
        assert_eq!(rad.dim(), 3);
    }

    #[test]
    fn steinberg_relations_hold_for_sl3_q() {
        let spec = MatrixAlgebraSpec::new(rings::rationals(), 3, AlgebraKind::Lie).unwrap();
        let s = sl(&spec).unwrap();
        let ext = uce(&s.algebra, AlgebraKind::Lie).unwrap();
        assert_eq!(ext.kernel_dim, 0);
        let report = steinberg_verify(&spec, &s, &ext).unwrap();
        assert!(report.all_hold(), "failures: {report:?}");
        assert!(report.checked > 0);
    }

    #[test]
    fn steinberg_rejects_small_n() {
        let spec = MatrixAlgebraSpec::new(rings::rationals(), 2, AlgebraKind::Lie).unwrap();
        let s = sl(&spec).unwrap();
        let ext = uce(&s.algebra, AlgebraKind::Lie).unwrap();
        assert!(matches!(
            steinberg_verify(&spec, &s, &ext),
            Err(MatrixFamilyError::SteinbergNeedsThree(2))
        ));
    }

    #[test]
    fn quotient_by_sl2_is_not_square_zero() {
        use crate::algebra_core::{quotient, square_zero_check, Ideal};
        let spec = MatrixAlgebraSpec::new(rings::rationals(), 2, AlgebraKind::Lie).unwrap();
        let g = gl(&spec).unwrap();
        let radical = perfect_radical(&g).unwrap();
        let (_, surjection) = quotient(&g, &radical).unwrap();
        let report = square_zero_check(&surjection).unwrap();
        assert_eq!(report.kernel.dim(), 3);
        assert!(!report.is_square_zero, "sl_2 squares onto itself");
    }

    #[test]
    fn steinberg_brackets_ignore_central_corrections() {
        // manual central extension: sl_3(Q) ⊕ k with the projection map
        use crate::algebra_core::{AlgebraMorphism, CentralExtension};
        let s = sl_n_q(3);
        let center = StructureConstantAlgebra::abelian(AlgebraKind::Lie, ScalarDomain::Rational, 1);
        let ext_algebra = s.algebra.direct_sum(&center).unwrap();
        let n = s.algebra.dim();
        let proj = SparseMatrix::from_triplets(
            n,
            n + 1,
            ScalarDomain::Rational,
            (0..n).map(|i| (i, i, ScalarDomain::Rational.one())),
        )
        .unwrap();
        let map = AlgebraMorphism::new(ext_algebra.clone(), s.algebra.clone(), proj).unwrap();
        let ext = CentralExtension {
            algebra: ext_algebra.clone(),
            map,
            kernel_dim: 1,
        };
        // brackets of lifts are unchanged by adding the central generator
        let z = SparseVec::unit(n + 1, n, ScalarDomain::Rational.one());
        for i in 0..n.min(4) {
            for j in 0..n.min(4) {
                let a = SparseVec::unit(n + 1, i, ScalarDomain::Rational.one());
                let b = SparseVec::unit(n + 1, j, ScalarDomain::Rational.one());
                let plain = ext.algebra.product(&a, &b);
                let shifted = ext.algebra.product(&a.add(&z), &b.add(&z));
                assert_eq!(plain, shifted, "central corrections drop out of brackets");
            }
        }
        // and the relation report through the extension is unchanged
        let spec = MatrixAlgebraSpec::new(rings::rationals(), 3, AlgebraKind::Lie).unwrap();
        let report = steinberg_verify(&spec, &s, &ext).unwrap();
        assert!(report.all_hold(), "{report:?}");
    }

    #[test]
    fn ring_units_detected() {
        assert!(rings::rationals().is_unital());
        assert!(rings::dual_numbers().is_unital());
        assert!(rings::truncated_poly(3).is_unital());
        assert!(rings::matrix_ring(2).is_unital());
        assert!(rings::upper_triangular(2).is_unital());
    }
}
