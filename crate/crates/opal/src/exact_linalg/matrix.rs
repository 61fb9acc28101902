//! Sparse vectors, sparse matrices and subspace bases over an exact field.

use std::collections::BTreeMap;
use std::fmt;

use super::scalar::{Scalar, ScalarDomain};
use super::LinalgError;

/// A sparse vector: sorted `(index, nonzero entry)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn unit(dim: usize, index: usize, one: Scalar) -> Self {
        assert!(index < dim);
        SparseVec {
            dim,
            entries: vec![(index, one)],
        }
    }

    /// Builds a vector from `(index, value)` pairs; drops zeros, sums repeats.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<Self, LinalgError> {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mut domain: Option<ScalarDomain> = None;
        for (i, v) in entries {
            if i >= dim {
                return Err(LinalgError::IndexOutOfRange { index: i, dim });
            }
            match domain {
                None => domain = Some(v.domain()),
                Some(d) if d != v.domain() => {
                    return Err(LinalgError::DomainMismatch {
                        left: d,
                        right: v.domain(),
                    })
                }
                _ => {}
            }
            match map.remove(&i) {
                None => {
                    map.insert(i, v);
                }
                Some(old) => {
                    let s = old + v;
                    if !s.is_zero() {
                        map.insert(i, s);
                    }
                }
            }
        }
        map.retain(|_, v| !v.is_zero());
        Ok(SparseVec {
            dim,
            entries: map.into_iter().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero(self.dim);
        }
        SparseVec {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, v.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self + c * other`, merging sorted supports.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        assert_eq!(self.dim, other.dim, "vector dimension mismatch");
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, _)), Some((ib, _))) if ia == ib => {
                    let (i, va) = a.next().unwrap();
                    let (_, vb) = b.next().unwrap();
                    let s = va.clone() + vb.clone() * c.clone();
                    if !s.is_zero() {
                        out.push((*i, s));
                    }
                }
                (Some((ia, _)), Some((ib, _))) if ia < ib => {
                    let (i, va) = a.next().unwrap();
                    out.push((*i, va.clone()));
                }
                (Some(_), Some(_)) => {
                    let (i, vb) = b.next().unwrap();
                    out.push((*i, vb.clone() * c.clone()));
                }
                (Some(_), None) => {
                    let (i, va) = a.next().unwrap();
                    out.push((*i, va.clone()));
                }
                (None, Some(_)) => {
                    let (i, vb) = b.next().unwrap();
                    out.push((*i, vb.clone() * c.clone()));
                }
                (None, None) => break,
            }
        }
        SparseVec {
            dim: self.dim,
            entries: out,
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let one = match self.entries.first().or(other.entries.first()) {
            Some((_, v)) => v.domain().one(),
            None => return self.clone(),
        };
        self.axpy(&one, other)
    }

    pub fn to_dense(&self, domain: ScalarDomain) -> Vec<Scalar> {
        let mut out = vec![domain.zero(); self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}*e{i}")?;
        }
        Ok(())
    }
}

/// A sparse matrix over one scalar domain, stored as an entry map
/// `(row, col) -> nonzero scalar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    domain: ScalarDomain,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, domain: ScalarDomain) -> Self {
        SparseMatrix {
            rows,
            cols,
            domain,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, domain: ScalarDomain) -> Self {
        let entries = (0..n).map(|i| ((i, i), domain.one())).collect();
        SparseMatrix {
            rows: n,
            cols: n,
            domain,
            entries,
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Zeros are dropped,
    /// repeated positions are summed, and all values must share one domain.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        domain: ScalarDomain,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self, LinalgError> {
        let mut entries: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= rows {
                return Err(LinalgError::IndexOutOfRange {
                    index: r,
                    dim: rows,
                });
            }
            if c >= cols {
                return Err(LinalgError::IndexOutOfRange {
                    index: c,
                    dim: cols,
                });
            }
            if v.domain() != domain {
                return Err(LinalgError::DomainMismatch {
                    left: domain,
                    right: v.domain(),
                });
            }
            match entries.remove(&(r, c)) {
                None => {
                    entries.insert((r, c), v);
                }
                Some(old) => {
                    let s = old + v;
                    if !s.is_zero() {
                        entries.insert((r, c), s);
                    }
                }
            }
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(SparseMatrix {
            rows,
            cols,
            domain,
            entries,
        })
    }

    /// Integer convenience constructor used heavily in tests.
    pub fn from_int_rows(rows: &[Vec<i64>], domain: ScalarDomain) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let triplets = rows.iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.len(), c, "ragged rows");
            row.iter()
                .enumerate()
                .map(move |(j, &v)| (i, j, domain.from_int(v)))
        });
        SparseMatrix::from_triplets(r, c, domain, triplets).expect("valid int matrix")
    }

    /// Assembles a matrix from per-column sparse vectors.
    pub fn from_columns(rows: usize, domain: ScalarDomain, columns: &[SparseVec]) -> Self {
        let mut entries = BTreeMap::new();
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.dim(), rows, "column length mismatch");
            for (i, v) in col.entries() {
                entries.insert((*i, j), v.clone());
            }
        }
        SparseMatrix {
            rows,
            cols: columns.len(),
            domain,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Scalar> {
        self.entries.get(&(row, col))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let entries = self
            .entries
            .iter()
            .map(|((r, c), v)| ((*c, *r), v.clone()))
            .collect();
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            domain: self.domain,
            entries,
        }
    }

    pub fn column(&self, j: usize) -> SparseVec {
        let entries = self
            .entries
            .iter()
            .filter(|((_, c), _)| *c == j)
            .map(|((r, _), v)| (*r, v.clone()))
            .collect();
        SparseVec {
            dim: self.rows,
            entries,
        }
    }

    /// Column-major view: per column, sorted `(row, value)` pairs.
    pub fn to_column_lists(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for ((r, c), v) in &self.entries {
            cols[*c].push((*r, v.clone()));
        }
        for col in &mut cols {
            col.sort_by_key(|(r, _)| *r);
        }
        cols
    }

    /// Row-major view used by the elimination kernel.
    pub fn to_row_lists(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows
    }

    pub fn mat_vec(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim(), self.cols, "shape mismatch in mat_vec");
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        let support: BTreeMap<usize, &Scalar> = v.entries().iter().map(|(i, c)| (*i, c)).collect();
        for ((r, c), m) in &self.entries {
            let Some(coeff) = support.get(c) else {
                continue;
            };
            let add = m.clone() * (*coeff).clone();
            match acc.remove(r) {
                None => {
                    if !add.is_zero() {
                        acc.insert(*r, add);
                    }
                }
                Some(old) => {
                    let s = old + add;
                    if !s.is_zero() {
                        acc.insert(*r, s);
                    }
                }
            }
        }
        SparseVec {
            dim: self.rows,
            entries: acc.into_iter().collect(),
        }
    }

    pub fn mat_mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        if self.domain != rhs.domain {
            return Err(LinalgError::DomainMismatch {
                left: self.domain,
                right: rhs.domain,
            });
        }
        // rhs organized by rows for cache-friendly accumulation
        let rhs_rows = rhs.to_row_lists();
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for ((r, k), v) in &self.entries {
            for (c, w) in &rhs_rows[*k] {
                let add = v.clone() * w.clone();
                match acc.remove(&(*r, *c)) {
                    None => {
                        if !add.is_zero() {
                            acc.insert((*r, *c), add);
                        }
                    }
                    Some(old) => {
                        let s = old + add;
                        if !s.is_zero() {
                            acc.insert((*r, *c), s);
                        }
                    }
                }
            }
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            domain: self.domain,
            entries: acc,
        })
    }

    pub fn add(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let triplets = self
            .iter()
            .map(|(r, c, v)| (r, c, v.clone()))
            .chain(rhs.iter().map(|(r, c, v)| (r, c, v.clone())));
        SparseMatrix::from_triplets(self.rows, self.cols, self.domain, triplets)
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        if c.is_zero() {
            return SparseMatrix::zero(self.rows, self.cols, self.domain);
        }
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| (*k, v.clone() * c.clone()))
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            domain: self.domain,
            entries,
        }
    }
}

pub(crate) fn vec_from_sorted(dim: usize, entries: Vec<(usize, Scalar)>) -> SparseVec {
    debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
    debug_assert!(entries.iter().all(|(i, v)| *i < dim && !v.is_zero()));
    SparseVec { dim, entries }
}

/// A list of linearly independent sparse vectors in a common ambient space.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<SparseVec>,
}

impl SubspaceBasis {
    /// Wraps vectors without the independence check; used by the
    /// elimination kernel whose outputs are independent by construction.
    pub(crate) fn new_unchecked(ambient_dim: usize, vectors: Vec<SparseVec>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.dim() == ambient_dim));
        SubspaceBasis {
            ambient_dim,
            vectors,
        }
    }

    /// Validates dimensions and linear independence (rank = count).
    pub fn new(ambient_dim: usize, vectors: Vec<SparseVec>) -> Result<Self, LinalgError> {
        for v in &vectors {
            if v.dim() != ambient_dim {
                return Err(LinalgError::ShapeMismatch {
                    left: (ambient_dim, 1),
                    right: (v.dim(), 1),
                });
            }
        }
        let basis = SubspaceBasis {
            ambient_dim,
            vectors,
        };
        if basis.vectors.is_empty() {
            return Ok(basis);
        }
        let domain = basis.vectors[0].entries()[0].1.domain();
        let m = basis.as_matrix(domain);
        if super::decompose::rank(&m) != basis.vectors.len() {
            return Err(LinalgError::DependentVectors);
        }
        Ok(basis)
    }

    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    /// The matrix whose columns are the basis vectors.
    pub fn as_matrix(&self, domain: ScalarDomain) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient_dim, domain, &self.vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarDomain {
        ScalarDomain::Rational
    }

    #[test]
    fn from_triplets_rejects_mixed_domains() {
        let err = SparseMatrix::from_triplets(
            2,
            2,
            q(),
            vec![
                (0, 0, q().one()),
                (1, 1, ScalarDomain::fp(5).unwrap().one()),
            ],
        );
        assert!(matches!(err, Err(LinalgError::DomainMismatch { .. })));
    }

    #[test]
    fn from_triplets_sums_and_drops_zeros() {
        let m = SparseMatrix::from_triplets(
            2,
            2,
            q(),
            vec![
                (0, 0, q().from_int(2)),
                (0, 0, q().from_int(-2)),
                (1, 0, q().from_int(3)),
            ],
        )
        .unwrap();
        assert_eq!(m.entry_count(), 1);
        assert_eq!(m.get(1, 0), Some(&q().from_int(3)));
    }

    #[test]
    fn axpy_merges_supports() {
        let a =
            SparseVec::from_entries(4, vec![(0, q().from_int(1)), (2, q().from_int(2))]).unwrap();
        let b =
            SparseVec::from_entries(4, vec![(1, q().from_int(5)), (2, q().from_int(-1))]).unwrap();
        let r = a.axpy(&q().from_int(2), &b);
        assert_eq!(r.get(0), Some(&q().from_int(1)));
        assert_eq!(r.get(1), Some(&q().from_int(10)));
        assert_eq!(r.get(2), None);
    }

    #[test]
    fn mat_vec_matches_dense() {
        let m = SparseMatrix::from_int_rows(&[vec![1, 2], vec![3, 4]], q());
        let v =
            SparseVec::from_entries(2, vec![(0, q().from_int(1)), (1, q().from_int(1))]).unwrap();
        let mv = m.mat_vec(&v);
        assert_eq!(mv.get(0), Some(&q().from_int(3)));
        assert_eq!(mv.get(1), Some(&q().from_int(7)));
    }

    #[test]
    fn subspace_basis_rejects_dependent() {
        let v1 =
            SparseVec::from_entries(2, vec![(0, q().from_int(1)), (1, q().from_int(1))]).unwrap();
        let v2 = v1.scale(&q().from_int(2));
        assert!(SubspaceBasis::new(2, vec![v1, v2]).is_err());
    }
}
