//! Exact sparse Gaussian elimination: rank, kernel, image, solving and
//! quotient bases.
//!
//! Pivoting is Markowitz-style on the sparsest column, with deterministic
//! tie-breaking by (column index, row index), so results are reproducible
//! across runs and thread counts. Over the rationals every row is kept as a
//! primitive integer vector (content divided out) to bound coefficient
//! growth; over a prime field rows are left as-is and pivots are scaled to 1
//! at the end.

use std::collections::{BTreeMap, BTreeSet};

use super::matrix::{vec_from_sorted, SparseMatrix, SparseVec, SubspaceBasis};
use super::scalar::{rational_content, Scalar, ScalarDomain};
use crate::par;

type Row = Vec<(usize, Scalar)>;

/// `self + c * other` on sorted sparse rows.
fn row_axpy(a: &Row, c: &Scalar, b: &Row) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = b[j].1.clone() * c.clone();
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.clone() + b[j].1.clone() * c.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Divides a rational row pair by its content so entries are coprime
/// integers with positive leading coefficient.
fn normalize(main: &mut Row, tag: Option<&mut Row>, domain: ScalarDomain) {
    if domain != ScalarDomain::Rational || main.is_empty() {
        return;
    }
    let refs: Vec<&Scalar> = main.iter().map(|(_, v)| v).collect();
    let Some(content) = rational_content(&refs) else {
        return;
    };
    if content.is_one() {
        return;
    }
    let inv = content.inverse().expect("content is nonzero");
    for (_, v) in main.iter_mut() {
        *v = v.clone() * inv.clone();
    }
    if let Some(tag) = tag {
        for (_, v) in tag.iter_mut() {
            *v = v.clone() * inv.clone();
        }
    }
}

pub(crate) struct Elimination {
    pub pivots: Vec<(usize, usize)>,
    pub rows: Vec<Row>,
    pub tags: Option<Vec<Row>>,
}

/// Forward elimination; optionally tracks the row transform and reduces to
/// full RREF with monic pivots.
pub(crate) fn eliminate(m: &SparseMatrix, want_transform: bool, full_rref: bool) -> Elimination {
    let domain = m.domain();
    let nrows = m.rows();
    let ncols = m.cols();
    let mut rows = m.to_row_lists();
    let mut tags: Option<Vec<Row>> = want_transform.then(|| {
        (0..nrows)
            .map(|r| vec![(r, domain.one())])
            .collect::<Vec<Row>>()
    });
    for (r, row) in rows.iter_mut().enumerate() {
        normalize(row, tags.as_mut().map(|t| &mut t[r]), domain);
    }

    // occupancy: per column, the active (non-pivot, nonzero) rows touching it
    let mut occ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            occ[*c].insert(r);
        }
    }
    // candidate pivot columns keyed by (support, column)
    let mut queue: BTreeSet<(usize, usize)> = occ
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_empty())
        .map(|(c, s)| (s.len(), c))
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut is_pivot_row = vec![false; nrows];

    while let Some(&(_, pcol)) = queue.first() {
        queue.remove(&(occ[pcol].len(), pcol));
        // pivot row: smallest (support, index) among rows hitting pcol
        let prow = occ[pcol]
            .iter()
            .copied()
            .min_by_key(|&r| (rows[r].len(), r))
            .expect("queued column has support");
        let pivot_val = rows[prow]
            .iter()
            .find(|(c, _)| *c == pcol)
            .expect("occupancy is consistent")
            .1
            .clone();

        // remove the pivot row from all occupancy sets
        for (c, _) in rows[prow].clone() {
            let old = occ[c].len();
            occ[c].remove(&prow);
            queue.remove(&(old, c));
            if !occ[c].is_empty() {
                queue.insert((occ[c].len(), c));
            }
        }
        is_pivot_row[prow] = true;

        // eliminate pcol from every other active row touching it
        let targets: Vec<usize> = occ[pcol].iter().copied().collect();
        if !targets.is_empty() {
            let pivot_row = rows[prow].clone();
            let pivot_tag = tags.as_ref().map(|t| t[prow].clone());
            let pivot_inv = pivot_val.inverse().expect("pivot entry nonzero");
            let updated: Vec<(Row, Option<Row>)> = par::map_slice(&targets, |&r| {
                let coeff = rows[r]
                    .iter()
                    .find(|(c, _)| *c == pcol)
                    .expect("target touches pivot column")
                    .1
                    .clone();
                let factor = -(coeff * pivot_inv.clone());
                let mut main = row_axpy(&rows[r], &factor, &pivot_row);
                let mut tag = pivot_tag
                    .as_ref()
                    .map(|pt| row_axpy(&tags.as_ref().unwrap()[r], &factor, pt));
                normalize(&mut main, tag.as_mut(), domain);
                (main, tag)
            });
            for (&r, (main, tag)) in targets.iter().zip(updated) {
                // occupancy delta for the rewritten row
                for (c, _) in &rows[r] {
                    let old = occ[*c].len();
                    occ[*c].remove(&r);
                    queue.remove(&(old, *c));
                    if !occ[*c].is_empty() {
                        queue.insert((occ[*c].len(), *c));
                    }
                }
                for (c, _) in &main {
                    let old = occ[*c].len();
                    if occ[*c].insert(r) {
                        if old > 0 {
                            queue.remove(&(old, *c));
                        }
                        queue.insert((occ[*c].len(), *c));
                    }
                }
                rows[r] = main;
                if let Some(t) = tag {
                    tags.as_mut().unwrap()[r] = t;
                }
            }
        }
        pivots.push((prow, pcol));
    }

    if full_rref {
        // later pivot rows contain no earlier pivot columns, so reducing in
        // reverse creation order needs a single pass
        let pivot_of_col: BTreeMap<usize, usize> = pivots.iter().map(|&(r, c)| (c, r)).collect();
        for k in (0..pivots.len()).rev() {
            let (r, c) = pivots[k];
            loop {
                let extra: Option<(usize, Scalar)> = rows[r]
                    .iter()
                    .find(|(col, _)| *col != c && pivot_of_col.contains_key(col))
                    .map(|(col, v)| (*col, v.clone()));
                let Some((col, v)) = extra else { break };
                let pr = pivot_of_col[&col];
                let pval = rows[pr]
                    .iter()
                    .find(|(cc, _)| *cc == col)
                    .unwrap()
                    .1
                    .clone();
                let factor = -(v * pval.inverse().expect("pivot nonzero"));
                rows[r] = row_axpy(&rows[r], &factor, &rows[pr].clone());
                if let Some(tags) = tags.as_mut() {
                    let pt = tags[pr].clone();
                    tags[r] = row_axpy(&tags[r], &factor, &pt);
                }
            }
        }
        // scale pivots to 1
        for &(r, c) in &pivots {
            let v = rows[r].iter().find(|(cc, _)| *cc == c).unwrap().1.clone();
            if v.is_one() {
                continue;
            }
            let inv = v.inverse().expect("pivot nonzero");
            for (_, x) in rows[r].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            if let Some(tags) = tags.as_mut() {
                for (_, x) in tags[r].iter_mut() {
                    *x = x.clone() * inv.clone();
                }
            }
        }
    }

    Elimination { pivots, rows, tags }
}

/// Rank of a sparse matrix.
///
/// Elimination runs over whichever orientation has more (and therefore
/// shorter) rows; the orientation choice is a fixed rule so output is
/// deterministic.
pub fn rank(m: &SparseMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    if m.rows() >= m.cols() {
        eliminate(m, false, false).pivots.len()
    } else {
        eliminate(&m.transpose(), false, false).pivots.len()
    }
}

/// Solves `m x = b` from a cached RREF factorization.
pub struct Solver {
    nrows: usize,
    ncols: usize,
    domain: ScalarDomain,
    pivots: Vec<(usize, usize)>,
    transform: Vec<Row>,
}

impl Solver {
    /// A preimage of `b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        assert_eq!(b.dim(), self.nrows, "target vector length mismatch");
        let dense_b: BTreeMap<usize, &Scalar> = b.entries().iter().map(|(i, v)| (*i, v)).collect();
        let mut y: Vec<Scalar> = Vec::with_capacity(self.nrows);
        for r in 0..self.nrows {
            let mut acc = self.domain.zero();
            for (j, v) in &self.transform[r] {
                if let Some(bv) = dense_b.get(j) {
                    acc = acc + v.clone() * (*bv).clone();
                }
            }
            y.push(acc);
        }
        let pivot_rows: BTreeSet<usize> = self.pivots.iter().map(|(r, _)| *r).collect();
        for (r, val) in y.iter().enumerate() {
            if !pivot_rows.contains(&r) && !val.is_zero() {
                return None;
            }
        }
        let mut entries: Vec<(usize, Scalar)> = self
            .pivots
            .iter()
            .filter(|(r, _)| !y[*r].is_zero())
            .map(|(r, c)| (*c, y[*r].clone()))
            .collect();
        entries.sort_by_key(|(c, _)| *c);
        Some(vec_from_sorted(self.ncols, entries))
    }

    /// Left inverse data: whether `b = 0` is forced, i.e. `b` not in image.
    pub fn contains(&self, b: &SparseVec) -> bool {
        self.solve(b).is_some()
    }
}

/// Full decomposition of a sparse matrix.
pub struct Decomposition {
    pub rank: usize,
    pub kernel: SubspaceBasis,
    pub image: SubspaceBasis,
    pub solver: Solver,
}

/// Row-reduces `m`, returning rank, a kernel basis, an image basis (the
/// pivot columns of `m`) and a solver for preimages.
pub fn decompose(m: &SparseMatrix) -> Decomposition {
    let elim = eliminate(m, true, true);
    let domain = m.domain();
    let rank = elim.pivots.len();

    let pivot_cols: BTreeSet<usize> = elim.pivots.iter().map(|(_, c)| *c).collect();
    let col_pivot_row: BTreeMap<usize, usize> = elim.pivots.iter().map(|&(r, c)| (c, r)).collect();

    // kernel: one vector per free column
    let mut kernel_vecs = Vec::with_capacity(m.cols() - rank);
    for f in 0..m.cols() {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut entries: Vec<(usize, Scalar)> = vec![(f, domain.one())];
        for (&c, &r) in &col_pivot_row {
            if let Some((_, v)) = elim.rows[r].iter().find(|(col, _)| *col == f) {
                entries.push((c, -v.clone()));
            }
        }
        entries.sort_by_key(|(c, _)| *c);
        kernel_vecs.push(vec_from_sorted(m.cols(), entries));
    }

    let image_vecs: Vec<SparseVec> = pivot_cols.iter().map(|&c| m.column(c)).collect();

    let solver = Solver {
        nrows: m.rows(),
        ncols: m.cols(),
        domain,
        pivots: elim.pivots,
        transform: elim.tags.expect("transform requested"),
    };

    Decomposition {
        rank,
        kernel: SubspaceBasis::new_unchecked(m.cols(), kernel_vecs),
        image: SubspaceBasis::new_unchecked(m.rows(), image_vecs),
        solver,
    }
}

/// A quotient of an ambient coordinate space by a spanned subspace.
pub struct Quotient {
    /// Surjection onto quotient coordinates; kills exactly `span(sub)`.
    pub projection: SparseMatrix,
    /// Section picking coset representatives; `projection * section = id`.
    pub section: SparseMatrix,
    pub dim: usize,
}

/// Quotient of `k^ambient_dim` by the span of `sub`.
///
/// Representatives are the lexicographically first ambient coordinates not
/// pivotal for the subspace, so the basis is deterministic.
pub fn quotient_basis(ambient_dim: usize, sub: &SubspaceBasis, domain: ScalarDomain) -> Quotient {
    assert_eq!(
        sub.ambient_dim(),
        ambient_dim,
        "subspace lives in a different ambient space"
    );
    if sub.dim() == 0 {
        return Quotient {
            projection: SparseMatrix::identity(ambient_dim, domain),
            section: SparseMatrix::identity(ambient_dim, domain),
            dim: ambient_dim,
        };
    }
    // subspace vectors as rows; RREF pivots mark dependent coordinates
    let rows_mat = sub.as_matrix(domain).transpose();
    let elim = eliminate(&rows_mat, false, true);
    let col_pivot_row: BTreeMap<usize, usize> = elim.pivots.iter().map(|&(r, c)| (c, r)).collect();
    let free: Vec<usize> = (0..ambient_dim)
        .filter(|c| !col_pivot_row.contains_key(c))
        .collect();
    let index_of_free: BTreeMap<usize, usize> =
        free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let qdim = free.len();

    let mut proj = Vec::new();
    for j in 0..ambient_dim {
        match col_pivot_row.get(&j) {
            None => proj.push((index_of_free[&j], j, domain.one())),
            Some(&r) => {
                // e_j = -sum_f R[r][f] e_f  (mod the subspace)
                for (f, v) in &elim.rows[r] {
                    if *f == j {
                        continue;
                    }
                    if let Some(&k) = index_of_free.get(f) {
                        proj.push((k, j, -v.clone()));
                    }
                }
            }
        }
    }
    let projection = SparseMatrix::from_triplets(qdim, ambient_dim, domain, proj)
        .expect("projection entries are consistent");
    let section = SparseMatrix::from_triplets(
        ambient_dim,
        qdim,
        domain,
        free.iter().enumerate().map(|(k, &c)| (c, k, domain.one())),
    )
    .expect("section entries are consistent");

    Quotient {
        projection,
        section,
        dim: qdim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::ScalarDomain;

    fn q() -> ScalarDomain {
        ScalarDomain::Rational
    }

    #[test]
    fn identity_full_rank() {
        let m = SparseMatrix::identity(3, q());
        let d = decompose(&m);
        assert_eq!(d.rank, 3);
        assert_eq!(d.kernel.dim(), 0);
    }

    #[test]
    fn zero_matrix() {
        let m = SparseMatrix::zero(2, 3, q());
        let d = decompose(&m);
        assert_eq!(d.rank, 0);
        assert_eq!(d.kernel.dim(), 3);
    }

    #[test]
    fn rank_one_kernel() {
        // [[1,2],[2,4]]: rank 1, kernel spanned by (2,-1)
        let m = SparseMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]], q());
        let d = decompose(&m);
        assert_eq!(d.rank, 1);
        assert_eq!(d.kernel.dim(), 1);
        let k = &d.kernel.vectors()[0];
        // kernel spanned by (2,-1): check m*k = 0 and the direction x = -2y
        assert!(m.mat_vec(k).is_zero());
        assert!(!k.is_zero());
        let x = k.get(0).cloned().unwrap_or_else(|| q().zero());
        let y = k.get(1).cloned().unwrap_or_else(|| q().zero());
        assert_eq!(x, y * q().from_int(-2));
    }

    #[test]
    fn solver_soundness() {
        let m = SparseMatrix::from_int_rows(&[vec![1, 2, 0], vec![0, 1, 1]], q());
        let d = decompose(&m);
        let b =
            SparseVec::from_entries(2, vec![(0, q().from_int(3)), (1, q().from_int(2))]).unwrap();
        let x = d
            .solver
            .solve(&b)
            .expect("b is in the image of a surjective map");
        assert_eq!(m.mat_vec(&x), b);
    }

    #[test]
    fn solver_detects_outside_image() {
        let m = SparseMatrix::from_int_rows(&[vec![1, 0], vec![2, 0]], q());
        let d = decompose(&m);
        let outside =
            SparseVec::from_entries(2, vec![(0, q().from_int(1)), (1, q().from_int(1))]).unwrap();
        assert!(d.solver.solve(&outside).is_none());
        let inside =
            SparseVec::from_entries(2, vec![(0, q().from_int(1)), (1, q().from_int(2))]).unwrap();
        assert!(d.solver.solve(&inside).is_some());
    }

    #[test]
    fn quotient_by_nothing_and_everything() {
        let empty = SubspaceBasis::empty(3);
        let quo = quotient_basis(3, &empty, q());
        assert_eq!(quo.dim, 3);
        let full = SubspaceBasis::new(
            2,
            vec![
                SparseVec::unit(2, 0, q().one()),
                SparseVec::unit(2, 1, q().one()),
            ],
        )
        .unwrap();
        assert_eq!(quotient_basis(2, &full, q()).dim, 0);
    }

    #[test]
    fn quotient_kills_subspace() {
        // ambient 2, sub = span{(1,1)}: dim 1 and projection((1,1)) = 0
        let diag = SparseVec::from_entries(2, vec![(0, q().one()), (1, q().one())]).unwrap();
        let sub = SubspaceBasis::new(2, vec![diag.clone()]).unwrap();
        let quo = quotient_basis(2, &sub, q());
        assert_eq!(quo.dim, 1);
        assert!(quo.projection.mat_vec(&diag).is_zero());
        let ps = quo.projection.mat_mul(&quo.section).unwrap();
        assert_eq!(ps, SparseMatrix::identity(1, q()));
    }

    #[test]
    fn fp_elimination() {
        let f2 = ScalarDomain::fp(2).unwrap();
        // over F2: [[1,1],[1,1]] has rank 1
        let m = SparseMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]], f2);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn parallel_matches_sequential() {
        use crate::par::{scoped, Threading};
        let m = SparseMatrix::from_int_rows(
            &[
                vec![2, 0, -1, 3, 0, 1],
                vec![0, 1, 4, 0, 0, -2],
                vec![2, 1, 3, 3, 0, -1],
                vec![1, 1, 1, 1, 1, 1],
                vec![0, 0, 2, -2, 4, 0],
            ],
            q(),
        );
        let seq = scoped(Threading::Sequential, || {
            let d = decompose(&m);
            (d.rank, d.kernel.vectors().to_vec())
        });
        let auto = {
            let d = decompose(&m);
            (d.rank, d.kernel.vectors().to_vec())
        };
        assert_eq!(seq, auto);
    }
}
