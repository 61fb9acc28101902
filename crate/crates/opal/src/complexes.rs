//! Bounded chain complexes, homology with representative cycles, induced
//! maps on homology, suspension.
//!
//! Chains convention throughout: the differential lowers the degree by 1.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exact_linalg::{decompose, rank, ScalarDomain, SparseMatrix, SparseVec};
use crate::par;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("differential squared is nonzero entering degree {degree}")]
    DifferentialSquare { degree: i32 },
    #[error("differential at degree {degree} has shape {got:?}, expected {expected:?}")]
    BadShape {
        degree: i32,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("degree {degree} outside complex range [{lo}, {hi}]")]
    DegreeOutOfRange { degree: i32, lo: i32, hi: i32 },
    #[error("map does not commute with differentials at degree {degree}")]
    NotChainMap { degree: i32 },
    #[error("complex map shape mismatch at degree {degree}")]
    MapShape { degree: i32 },
}

/// A bounded complex of finite-dimensional spaces with basis labels.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    lo: i32,
    hi: i32,
    domain: ScalarDomain,
    dims: BTreeMap<i32, usize>,
    labels: BTreeMap<i32, Vec<String>>,
    /// `differentials[n]`: C_n -> C_{n-1}; absent means zero (or out of range).
    differentials: BTreeMap<i32, SparseMatrix>,
}

impl ChainComplex {
    /// Builds and validates a complex: differential shapes must match the
    /// adjacent dimensions and d∘d must vanish (the offending degree is
    /// reported otherwise).
    pub fn new(
        lo: i32,
        domain: ScalarDomain,
        spaces: Vec<(Vec<String>, Option<SparseMatrix>)>,
    ) -> Result<Self, ComplexError> {
        let hi = lo + spaces.len() as i32 - 1;
        let mut dims = BTreeMap::new();
        let mut labels = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for (offset, (lab, diff)) in spaces.into_iter().enumerate() {
            let n = lo + offset as i32;
            dims.insert(n, lab.len());
            labels.insert(n, lab);
            if let Some(d) = diff {
                differentials.insert(n, d);
            }
        }
        let complex = ChainComplex {
            lo,
            hi,
            domain,
            dims,
            labels,
            differentials,
        };
        complex.validate()?;
        Ok(complex)
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for (&n, d) in &self.differentials {
            let target = if n > self.lo { self.dim(n - 1) } else { 0 };
            let expected = (target, self.dim(n));
            if (d.rows(), d.cols()) != expected {
                return Err(ComplexError::BadShape {
                    degree: n,
                    got: (d.rows(), d.cols()),
                    expected,
                });
            }
        }
        for (&n, d) in &self.differentials {
            if let Some(next) = self.differentials.get(&(n + 1)) {
                let dd = d.mat_mul(next).expect("shapes already validated");
                if !dd.is_zero() {
                    return Err(ComplexError::DifferentialSquare { degree: n - 1 });
                }
            }
        }
        Ok(())
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn labels(&self, n: i32) -> &[String] {
        self.labels.get(&n).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// The differential C_n -> C_{n-1}; zero matrix when absent.
    pub fn differential(&self, n: i32) -> SparseMatrix {
        match self.differentials.get(&n) {
            Some(d) => d.clone(),
            None => {
                let target = if n > self.lo && n <= self.hi {
                    self.dim(n - 1)
                } else {
                    0
                };
                let source = self.dim(n);
                SparseMatrix::zero(target, source, self.domain)
            }
        }
    }

    /// Euler characteristic Σ(-1)^n dim C_n.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&n, &d)| {
                if n.rem_euclid(2) == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }

    /// The n-th suspension: dimensions and homology shift up by `n`,
    /// differential matrices are reused unchanged under this convention.
    pub fn suspension(&self, n: i32) -> ChainComplex {
        ChainComplex {
            lo: self.lo + n,
            hi: self.hi + n,
            domain: self.domain,
            dims: self.dims.iter().map(|(&k, &v)| (k + n, v)).collect(),
            labels: self
                .labels
                .iter()
                .map(|(&k, v)| (k + n, v.clone()))
                .collect(),
            differentials: self
                .differentials
                .iter()
                .map(|(&k, v)| (k + n, v.clone()))
                .collect(),
        }
    }

    fn check_range(&self, degrees: &[i32]) -> Result<(), ComplexError> {
        for &n in degrees {
            if n < self.lo || n > self.hi {
                return Err(ComplexError::DegreeOutOfRange {
                    degree: n,
                    lo: self.lo,
                    hi: self.hi,
                });
            }
        }
        Ok(())
    }

    /// Homology dimensions (and optionally deterministic representative
    /// cycles) over an inclusive degree range.
    pub fn homology(
        &self,
        degrees: impl IntoIterator<Item = i32>,
        with_representatives: bool,
    ) -> Result<HomologyReport, ComplexError> {
        let degrees: Vec<i32> = degrees.into_iter().collect();
        self.check_range(&degrees)?;
        // ranks of every differential adjacent to a requested degree
        let mut needed: Vec<i32> = degrees.iter().flat_map(|&n| [n, n + 1]).collect();
        needed.sort_unstable();
        needed.dedup();
        let ranks: BTreeMap<i32, usize> = needed
            .iter()
            .copied()
            .zip(par::map_slice(&needed, |&n| rank(&self.differential(n))))
            .collect();

        let mut dims = BTreeMap::new();
        let mut representatives = BTreeMap::new();
        for &n in &degrees {
            let kernel_dim = self.dim(n) - ranks[&n];
            let h = kernel_dim - ranks[&(n + 1)];
            dims.insert(n, h);
            if with_representatives && h > 0 {
                representatives.insert(n, self.representatives(n));
            }
        }
        Ok(HomologyReport {
            dims,
            representatives,
        })
    }

    /// Lexicographically first kernel-basis vectors independent modulo the
    /// image of the incoming differential.
    fn representatives(&self, n: i32) -> Vec<SparseVec> {
        let kernel = decompose(&self.differential(n)).kernel;
        let image = decompose(&self.differential(n + 1)).image;
        let mut chosen: Vec<SparseVec> = Vec::new();
        let mut span: Vec<SparseVec> = image.vectors().to_vec();
        let base_rank = rank(&SparseMatrix::from_columns(self.dim(n), self.domain, &span));
        let mut current_rank = base_rank;
        for v in kernel.vectors() {
            span.push(v.clone());
            let r = rank(&SparseMatrix::from_columns(self.dim(n), self.domain, &span));
            if r > current_rank {
                current_rank = r;
                chosen.push(v.clone());
            } else {
                span.pop();
            }
        }
        chosen
    }
}

/// Per-degree homology dimensions with optional representatives.
#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub dims: BTreeMap<i32, usize>,
    pub representatives: BTreeMap<i32, Vec<SparseVec>>,
}

impl HomologyReport {
    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// Tab-separated table `degree\tdimension`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("degree\tdimension\n");
        for (n, d) in &self.dims {
            out.push_str(&format!("{n}\t{d}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row {
            degree: i32,
            dimension: usize,
        }
        let rows: Vec<Row> = self
            .dims
            .iter()
            .map(|(&degree, &dimension)| Row { degree, dimension })
            .collect();
        serde_json::to_string_pretty(&rows).expect("report serializes")
    }
}

/// A degreewise map of complexes commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    maps: BTreeMap<i32, SparseMatrix>,
}

impl ComplexMap {
    /// Validates shapes and the chain-map identity `d ∘ f = f ∘ d` in every
    /// shared degree. Missing degrees are treated as zero maps.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        maps: BTreeMap<i32, SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        for (&n, f) in &maps {
            if (f.rows(), f.cols()) != (target.dim(n), source.dim(n)) {
                return Err(ComplexError::MapShape { degree: n });
            }
        }
        let map = ComplexMap {
            source,
            target,
            maps,
        };
        let lo = map.source.lo.max(map.target.lo);
        let hi = map.source.hi.min(map.target.hi);
        for n in lo..=hi {
            let left = map
                .target
                .differential(n)
                .mat_mul(&map.component(n))
                .expect("shapes");
            let right = map.component(n - 1).mat_mul(&map.source.differential(n));
            let right = match right {
                Ok(r) => r,
                Err(_) => continue,
            };
            if left != right {
                return Err(ComplexError::NotChainMap { degree: n });
            }
        }
        Ok(map)
    }

    pub fn component(&self, n: i32) -> SparseMatrix {
        self.maps.get(&n).cloned().unwrap_or_else(|| {
            SparseMatrix::zero(self.target.dim(n), self.source.dim(n), self.source.domain())
        })
    }

    /// The induced map on homology in the requested degrees, as a matrix
    /// from source homology coordinates to target homology coordinates.
    pub fn induced_on_homology(
        &self,
        degrees: impl IntoIterator<Item = i32>,
    ) -> Result<BTreeMap<i32, SparseMatrix>, ComplexError> {
        let degrees: Vec<i32> = degrees.into_iter().collect();
        let mut out = BTreeMap::new();
        for &n in &degrees {
            let src = self.source.homology([n], true)?;
            let tgt = self.target.homology([n], true)?;
            let src_reps = src.representatives.get(&n).cloned().unwrap_or_default();
            let tgt_reps = tgt.representatives.get(&n).cloned().unwrap_or_default();
            let h_src = src.dim(n);
            let h_tgt = tgt.dim(n);
            let domain = self.source.domain();
            if h_src == 0 || h_tgt == 0 {
                out.insert(n, SparseMatrix::zero(h_tgt, h_src, domain));
                continue;
            }
            // express f(rep) in target homology coordinates: solve against
            // [target reps | boundaries]
            let boundary_cols = decompose(&self.target.differential(n + 1)).image;
            let mut cols: Vec<SparseVec> = tgt_reps.clone();
            cols.extend(boundary_cols.vectors().iter().cloned());
            let solve_mat = SparseMatrix::from_columns(self.target.dim(n), domain, &cols);
            let solver = decompose(&solve_mat).solver;
            let mut triplets = Vec::new();
            for (j, rep) in src_reps.iter().enumerate() {
                let img = self.component(n).mat_vec(rep);
                let x = solver
                    .solve(&img)
                    .expect("image of a cycle is a cycle, expressible in reps + boundaries");
                for (i, v) in x.entries() {
                    if *i < h_tgt {
                        triplets.push((*i, j, v.clone()));
                    }
                }
            }
            out.insert(
                n,
                SparseMatrix::from_triplets(h_tgt, h_src, domain, triplets)
                    .expect("coordinates fit"),
            );
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarDomain {
        ScalarDomain::Rational
    }

    fn labels(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    /// 0 -> k -> k -> 0 with identity differential: acyclic.
    #[test]
    fn acyclic_pair() {
        let c = ChainComplex::new(
            0,
            q(),
            vec![
                (labels("a", 1), None),
                (labels("b", 1), Some(SparseMatrix::identity(1, q()))),
            ],
        )
        .unwrap();
        let h = c.homology(0..=1, false).unwrap();
        assert_eq!(h.dim(0), 0);
        assert_eq!(h.dim(1), 0);
    }

    #[test]
    fn zero_differentials_give_full_homology() {
        let c = ChainComplex::new(0, q(), vec![(labels("a", 2), None), (labels("b", 3), None)])
            .unwrap();
        let h = c.homology(0..=1, false).unwrap();
        assert_eq!(h.dim(0), 2);
        assert_eq!(h.dim(1), 3);
    }

    /// 0 -> k^2 -[[1,0]]-> k -> 0: H_1 = 1, H_0 = 0.
    #[test]
    fn projection_complex() {
        let d1 = SparseMatrix::from_int_rows(&[vec![1, 0]], q());
        let c = ChainComplex::new(
            0,
            q(),
            vec![(labels("x", 1), None), (labels("y", 2), Some(d1))],
        )
        .unwrap();
        let h = c.homology(0..=1, true).unwrap();
        assert_eq!(h.dim(0), 0);
        assert_eq!(h.dim(1), 1);
        // representative is a cycle
        let rep = &h.representatives[&1][0];
        assert!(c.differential(1).mat_vec(rep).is_zero());
    }

    #[test]
    fn rejects_nonzero_d_squared() {
        let d1 = SparseMatrix::identity(1, q());
        let d2 = SparseMatrix::identity(1, q());
        let err = ChainComplex::new(
            0,
            q(),
            vec![
                (labels("a", 1), None),
                (labels("b", 1), Some(d1)),
                (labels("c", 1), Some(d2)),
            ],
        );
        assert!(matches!(
            err,
            Err(ComplexError::DifferentialSquare { degree: 0 })
        ));
    }

    #[test]
    fn degree_out_of_range() {
        let c = ChainComplex::new(0, q(), vec![(labels("a", 1), None)]).unwrap();
        assert!(matches!(
            c.homology([5], false),
            Err(ComplexError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        let d1 = SparseMatrix::from_int_rows(&[vec![1, 0], vec![0, 0]], q());
        let c = ChainComplex::new(
            0,
            q(),
            vec![(labels("x", 2), None), (labels("y", 2), Some(d1))],
        )
        .unwrap();
        let h = c.homology(0..=1, false).unwrap();
        let chi_h: i64 = h
            .dims
            .iter()
            .map(|(&n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        assert_eq!(c.euler_characteristic(), chi_h);
    }

    #[test]
    fn suspension_shifts_homology() {
        let d1 = SparseMatrix::from_int_rows(&[vec![1, 0]], q());
        let c = ChainComplex::new(
            0,
            q(),
            vec![(labels("x", 1), None), (labels("y", 2), Some(d1))],
        )
        .unwrap();
        let s = c.suspension(3);
        let h = c.homology(0..=1, false).unwrap();
        let hs = s.homology(3..=4, false).unwrap();
        assert_eq!(h.dim(0), hs.dim(3));
        assert_eq!(h.dim(1), hs.dim(4));
        assert_eq!(c.suspension(0).dim(0), c.dim(0));
    }

    #[test]
    fn identity_map_induces_identity() {
        let d1 = SparseMatrix::from_int_rows(&[vec![0, 0], vec![0, 0]], q());
        let c = ChainComplex::new(
            0,
            q(),
            vec![(labels("x", 2), None), (labels("y", 2), Some(d1))],
        )
        .unwrap();
        let mut maps = BTreeMap::new();
        maps.insert(0, SparseMatrix::identity(2, q()));
        maps.insert(1, SparseMatrix::identity(2, q()));
        let f = ComplexMap::new(c.clone(), c, maps).unwrap();
        let ind = f.induced_on_homology([0, 1]).unwrap();
        assert_eq!(ind[&0], SparseMatrix::identity(2, q()));
        assert_eq!(ind[&1], SparseMatrix::identity(2, q()));
    }

    #[test]
    fn zero_map_induces_zero() {
        let c = ChainComplex::new(0, q(), vec![(labels("x", 2), None)]).unwrap();
        let f = ComplexMap::new(c.clone(), c, BTreeMap::new()).unwrap();
        let ind = f.induced_on_homology([0]).unwrap();
        assert!(ind[&0].is_zero());
    }

    #[test]
    fn non_chain_map_rejected() {
        // source: 0 -> k -(1)-> k; target: same, but map swaps degrees badly
        let d1 = SparseMatrix::identity(1, q());
        let c = ChainComplex::new(
            0,
            q(),
            vec![(labels("a", 1), None), (labels("b", 1), Some(d1))],
        )
        .unwrap();
        let zero_d =
            ChainComplex::new(0, q(), vec![(labels("a", 1), None), (labels("b", 1), None)])
                .unwrap();
        let mut maps = BTreeMap::new();
        maps.insert(0, SparseMatrix::identity(1, q()));
        maps.insert(1, SparseMatrix::identity(1, q()));
        // f: c -> zero_d cannot commute: d_target∘f_1 = 0 but f_0∘d_source = id
        assert!(matches!(
            ComplexMap::new(c, zero_d, maps),
            Err(ComplexError::NotChainMap { .. })
        ));
    }

    #[test]
    fn homology_invariant_under_basis_permutation() {
        // permuting the degree-1 basis columns (and rows of nothing) keeps dims
        let d1 = SparseMatrix::from_int_rows(&[vec![1, 2, 0], vec![0, 1, 1]], q());
        let c1 = ChainComplex::new(
            0,
            q(),
            vec![(labels("x", 2), None), (labels("y", 3), Some(d1))],
        )
        .unwrap();
        let perm: Vec<usize> = vec![2, 0, 1];
        let d1p = {
            let orig = c1.differential(1);
            let mut triplets = Vec::new();
            for (r, c, v) in orig.iter() {
                let new_c = perm.iter().position(|&p| p == c).unwrap();
                triplets.push((r, new_c, v.clone()));
            }
            SparseMatrix::from_triplets(2, 3, q(), triplets).unwrap()
        };
        let c2 = ChainComplex::new(
            0,
            q(),
            vec![(labels("x", 2), None), (labels("y", 3), Some(d1p))],
        )
        .unwrap();
        let h1 = c1.homology(0..=1, false).unwrap();
        let h2 = c2.homology(0..=1, false).unwrap();
        assert_eq!(h1.dims, h2.dims);
    }
}
