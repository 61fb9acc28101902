//! The Hurewicz comparison map π_*(A) → H^Q_*(A) for quasi-free
//! presentations, induced by the projection onto indecomposables.

use std::collections::BTreeMap;

use crate::complexes::HomologyReport;
use crate::exact_linalg::{rank, SparseMatrix};

use super::presentation::QuasiFreePresentation;
use super::PlusError;

#[derive(Debug)]
pub struct HurewiczReport {
    pub pi: HomologyReport,
    pub hq: HomologyReport,
    pub maps: BTreeMap<i32, SparseMatrix>,
    /// Largest n with π_k = 0 for all 0 ≤ k ≤ n within the inspected
    /// range; `None` when π₀ ≠ 0.
    pub connectivity: Option<i64>,
    pub iso_degrees: Vec<i64>,
    pub epi_degrees: Vec<i64>,
}

impl HurewiczReport {
    pub fn is_iso_at(&self, k: i64) -> bool {
        self.iso_degrees.contains(&k)
    }

    pub fn is_epi_at(&self, k: i64) -> bool {
        self.epi_degrees.contains(&k)
    }
}

/// Computes π_*, H^Q_* and the induced comparison map in the requested
/// degrees (all within the presentation's truncation minus one, so the top
/// differential is present).
pub fn hurewicz(p: &QuasiFreePresentation, max_degree: i64) -> Result<HurewiczReport, PlusError> {
    if max_degree + 1 > p.degree_max() {
        return Err(PlusError::MalformedPresentation(format!(
            "hurewicz needs degree_max at least {} to trust degree {max_degree}",
            max_degree + 1
        )));
    }
    let projection = p.indecomposables_map()?;
    let full = &projection.source;
    let q = &projection.target;
    let pi = full.homology(0..=max_degree as i32, false)?;
    let mut hq_dims = BTreeMap::new();
    let q_hi = q.hi();
    let hq_inner = q.homology(0..=q_hi.min(max_degree as i32), false)?;
    for k in 0..=max_degree as i32 {
        hq_dims.insert(k, if k <= q_hi { hq_inner.dim(k) } else { 0 });
    }
    let hq = HomologyReport {
        dims: hq_dims,
        representatives: BTreeMap::new(),
    };

    let mut maps = BTreeMap::new();
    for k in 0..=max_degree as i32 {
        if k <= q_hi {
            let m = projection.induced_on_homology([k])?;
            maps.insert(k, m[&k].clone());
        } else {
            maps.insert(k, SparseMatrix::zero(0, pi.dim(k), full.domain()));
        }
    }

    let connectivity = {
        let mut conn = None;
        for k in 0..=max_degree {
            if pi.dim(k as i32) == 0 {
                conn = Some(k);
            } else {
                break;
            }
        }
        conn
    };
    let mut iso_degrees = Vec::new();
    let mut epi_degrees = Vec::new();
    for k in 0..=max_degree {
        let m = &maps[&(k as i32)];
        let r = rank(m);
        let injective = r == pi.dim(k as i32);
        let surjective = r == hq.dim(k as i32);
        if surjective {
            epi_degrees.push(k);
            if injective && pi.dim(k as i32) == hq.dim(k as i32) {
                iso_degrees.push(k);
            }
        }
    }
    Ok(HurewiczReport {
        pi,
        hq,
        maps,
        connectivity,
        iso_degrees,
        epi_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::ScalarDomain;
    use crate::operad_kit::{classical_operad, ClassicalOperad};
    use crate::plus_construction::presentation::FormalElement;

    fn q() -> ScalarDomain {
        ScalarDomain::Rational
    }

    #[test]
    fn identity_pair_trivial_iso() {
        let lie = classical_operad(ClassicalOperad::Lie, 4, q()).unwrap();
        let p = QuasiFreePresentation::new(
            lie,
            vec![("x".into(), 0), ("y".into(), 1)],
            vec![
                FormalElement::zero(),
                FormalElement::generator(0, q().one()),
            ],
            3,
            4,
        )
        .unwrap();
        let report = hurewicz(&p, 3).unwrap();
        for k in 0..=3 {
            assert_eq!(report.pi.dim(k as i32), 0);
            assert_eq!(report.hq.dim(k as i32), 0);
            assert!(report.is_iso_at(k));
        }
    }

    #[test]
    fn odd_lie_generator_fails_injectivity_beyond_range() {
        // free Lie on one odd degree-1 generator: π₁ = x, π₂ = [x,x] ≠ 0,
        // H^Q concentrated in degree 1; the theorem (n = 0 here) gives iso
        // up to 1 and epi at 2, and indeed Hu is not injective at 2.
        let lie = classical_operad(ClassicalOperad::Lie, 4, q()).unwrap();
        let p = QuasiFreePresentation::new(
            lie,
            vec![("x".into(), 1)],
            vec![FormalElement::zero()],
            3,
            4,
        )
        .unwrap();
        let report = hurewicz(&p, 3).unwrap();
        assert_eq!(report.connectivity, Some(0));
        assert_eq!(report.pi.dim(1), 1);
        assert_eq!(report.pi.dim(2), 1, "[x,x] survives");
        assert_eq!(report.hq.dim(2), 0);
        assert!(report.is_iso_at(1));
        assert!(report.is_epi_at(2));
        assert!(
            !report.is_iso_at(2),
            "not injective past the Hurewicz range"
        );
    }

    #[test]
    fn com_on_one_generator_iso_in_its_degree() {
        let com = classical_operad(ClassicalOperad::Com, 4, q()).unwrap();
        let p = QuasiFreePresentation::new(
            com,
            vec![("x".into(), 2)],
            vec![FormalElement::zero()],
            3,
            7,
        )
        .unwrap();
        let report = hurewicz(&p, 5).unwrap();
        assert_eq!(report.connectivity, Some(1));
        assert!(report.is_iso_at(2));
        assert!(report.is_iso_at(3));
    }
}
