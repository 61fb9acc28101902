//! The four classical complexes of discrete algebras: Chevalley-Eilenberg,
//! Leibniz (Loday), Hochschild, and the Connes cyclic quotient, plus
//! stabilization sweeps over matrix size.
//!
//! Sign conventions are pinned here once and enforced by the d² = 0 check
//! every complex passes at construction:
//!
//! * CE: d(x₁∧…∧xₙ) = Σ_{a<b} (−1)^{a+b} [x_a,x_b] ∧ x₁…x̂_a…x̂_b…∧xₙ
//! * Leibniz: d(x₁⊗…⊗xₙ) = Σ_{a<b} (−1)^b x₁⊗…[x_a,x_b]…x̂_b…⊗xₙ
//! * Hochschild: b(a₀⊗…⊗aₙ) = Σ_{i<n} (−1)^i a₀⊗…a_ia_{i+1}…⊗aₙ
//!   + (−1)ⁿ aₙa₀⊗…⊗a_{n−1}
//! * cyclic operator: t(a₀⊗…⊗aₙ) = (−1)ⁿ aₙ⊗a₀⊗…⊗a_{n−1}

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::algebra_core::{
    uce, AlgebraError, AlgebraKind, AlgebraMorphism, StructureConstantAlgebra,
};
use crate::complexes::{ChainComplex, ComplexError, ComplexMap, HomologyReport};
use crate::exact_linalg::{quotient_basis, Scalar, ScalarDomain, SparseMatrix, SparseVec};
use crate::matrix_families::{sl, MatrixAlgebraSpec, MatrixFamilyError};
use crate::par;

#[derive(Debug, Error)]
pub enum TheoryError {
    #[error("theory {theory} requires an algebra of kind {expected}, got {got}")]
    KindMismatch {
        theory: TheoryTag,
        expected: &'static str,
        got: &'static str,
    },
    #[error("Hochschild and cyclic homology require a unital associative algebra")]
    NotUnital,
    #[error(
        "cyclic homology needs characteristic 0 or p > max degree + 1 (p = {p}, degree {degree})"
    )]
    BadCharacteristic { p: u64, degree: usize },
    #[error("basis size {size} in degree {degree} exceeds the budget of {budget}")]
    BudgetExceeded {
        degree: usize,
        size: usize,
        budget: usize,
    },
    #[error("unknown theory tag: {0}")]
    UnknownTag(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    MatrixFamily(#[from] MatrixFamilyError),
}

/// Which classical homology theory to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoryTag {
    CE,
    Leibniz,
    Hochschild,
    CyclicConnes,
}

impl fmt::Display for TheoryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TheoryTag::CE => "ce",
            TheoryTag::Leibniz => "leibniz",
            TheoryTag::Hochschild => "hochschild",
            TheoryTag::CyclicConnes => "cyclic",
        };
        write!(f, "{name}")
    }
}

impl FromStr for TheoryTag {
    type Err = TheoryError;
    fn from_str(s: &str) -> Result<Self, TheoryError> {
        match s {
            "ce" | "CE" | "lie" => Ok(TheoryTag::CE),
            "leibniz" | "leib" => Ok(TheoryTag::Leibniz),
            "hochschild" | "hh" => Ok(TheoryTag::Hochschild),
            "cyclic" | "hc" | "connes" => Ok(TheoryTag::CyclicConnes),
            other => Err(TheoryError::UnknownTag(other.to_string())),
        }
    }
}

/// Per-degree basis-size cap; construction aborts predictably instead of
/// thrashing when a sweep outgrows memory.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_basis: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_basis: 250_000 }
    }
}

impl Budget {
    fn check(&self, degree: usize, size: usize) -> Result<(), TheoryError> {
        if size > self.max_basis {
            Err(TheoryError::BudgetExceeded {
                degree,
                size,
                budget: self.max_basis,
            })
        } else {
            Ok(())
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The Chevalley-Eilenberg complex Λ*g of a Lie algebra, degrees
/// 0..=max_degree with Λ⁰ = k in degree 0.
pub fn ce_complex(
    g: &StructureConstantAlgebra,
    max_degree: usize,
    budget: &Budget,
) -> Result<ChainComplex, TheoryError> {
    if g.kind() != AlgebraKind::Lie {
        return Err(TheoryError::KindMismatch {
            theory: TheoryTag::CE,
            expected: "lie",
            got: g.kind().name(),
        });
    }
    let dim = g.dim();
    let domain = g.domain();
    for n in 0..=max_degree {
        budget.check(n, binomial(dim, n))?;
    }

    // per-degree bases: increasing index tuples in lexicographic order
    let mut bases: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut index: Vec<BTreeMap<Vec<usize>, usize>> = Vec::new();
    for n in 0..=max_degree {
        let combos: Vec<Vec<usize>> = (0..dim).combinations(n).collect();
        index.push(combos.iter().cloned().zip(0..).collect());
        bases.push(combos);
    }

    let mut spaces = Vec::new();
    for n in 0..=max_degree {
        let labels: Vec<String> = bases[n].iter().map(|tuple| wedge_label(g, tuple)).collect();
        let diff = if n == 0 || bases[n].is_empty() {
            None
        } else {
            let target_dim = bases[n - 1].len();
            let lower = &index[n - 1];
            let columns = par::map_slice(&bases[n], |tuple| {
                let mut entries: Vec<(usize, Scalar)> = Vec::new();
                for a in 0..n {
                    for b in (a + 1)..n {
                        // (−1)^{a+b} with 1-based positions
                        let base_sign = crate::exact_linalg::sign(domain, (a + 1 + b + 1) as i64);
                        let bracket = g.basis_product(tuple[a], tuple[b]);
                        let rest: Vec<usize> = tuple
                            .iter()
                            .enumerate()
                            .filter(|(pos, _)| *pos != a && *pos != b)
                            .map(|(_, &v)| v)
                            .collect();
                        for (m, c) in bracket.entries() {
                            if rest.contains(m) {
                                continue;
                            }
                            let mut sorted = rest.clone();
                            let pos = sorted.partition_point(|&x| x < *m);
                            sorted.insert(pos, *m);
                            // moving the bracket factor from the front into place
                            let sort_sign = crate::exact_linalg::sign(domain, pos as i64);
                            let coeff = base_sign.clone() * sort_sign * c.clone();
                            entries.push((lower[&sorted], coeff));
                        }
                    }
                }
                SparseVec::from_entries(target_dim, entries).expect("CE column entries valid")
            });
            Some(SparseMatrix::from_columns(target_dim, domain, &columns))
        };
        spaces.push((labels, diff));
    }
    Ok(ChainComplex::new(0, domain, spaces)?)
}

fn wedge_label(g: &StructureConstantAlgebra, tuple: &[usize]) -> String {
    if tuple.is_empty() {
        return "1".to_string();
    }
    tuple.iter().map(|&i| g.labels()[i].clone()).join("^")
}

/// The Loday complex g^⊗* of a Leibniz (or Lie) algebra, degrees
/// 0..=max_degree with k in degree 0.
pub fn leibniz_complex(
    g: &StructureConstantAlgebra,
    max_degree: usize,
    budget: &Budget,
) -> Result<ChainComplex, TheoryError> {
    if g.kind() == AlgebraKind::Associative {
        return Err(TheoryError::KindMismatch {
            theory: TheoryTag::Leibniz,
            expected: "leibniz or lie",
            got: g.kind().name(),
        });
    }
    let dim = g.dim();
    let domain = g.domain();
    let mut size = 1usize;
    for n in 0..=max_degree {
        budget.check(n, size)?;
        size = size.saturating_mul(dim);
    }
    let tuple_count = |n: usize| dim.checked_pow(n as u32).unwrap_or(0);
    // tuple <-> index: big-endian base-dim digits
    let unrank = |mut idx: usize, n: usize| -> Vec<usize> {
        let mut tuple = vec![0usize; n];
        for slot in (0..n).rev() {
            tuple[slot] = idx % dim;
            idx /= dim;
        }
        tuple
    };
    let rank = |tuple: &[usize]| -> usize { tuple.iter().fold(0, |acc, &d| acc * dim + d) };

    let mut spaces = Vec::new();
    for n in 0..=max_degree {
        let count = tuple_count(n);
        let labels: Vec<String> = (0..count)
            .map(|i| {
                let t = unrank(i, n);
                if t.is_empty() {
                    "1".to_string()
                } else {
                    t.iter().map(|&k| g.labels()[k].clone()).join("*")
                }
            })
            .collect();
        let diff = if n == 0 || count == 0 || dim == 0 {
            None
        } else {
            let target_dim = tuple_count(n - 1);
            let columns = par::map_indexed(count, |col| {
                let tuple = unrank(col, n);
                let mut entries: Vec<(usize, Scalar)> = Vec::new();
                for a in 0..n {
                    for b in (a + 1)..n {
                        // (−1)^b with 1-based b
                        let s = crate::exact_linalg::sign(domain, (b + 1) as i64);
                        for (m, c) in g.basis_product(tuple[a], tuple[b]).entries() {
                            let mut reduced = Vec::with_capacity(n - 1);
                            for (pos, &v) in tuple.iter().enumerate() {
                                if pos == b {
                                    continue;
                                }
                                reduced.push(if pos == a { *m } else { v });
                            }
                            entries.push((rank(&reduced), s.clone() * c.clone()));
                        }
                    }
                }
                SparseVec::from_entries(target_dim, entries).expect("Loday column entries valid")
            });
            Some(SparseMatrix::from_columns(target_dim, domain, &columns))
        };
        spaces.push((labels, diff));
    }
    Ok(ChainComplex::new(0, domain, spaces)?)
}

fn tensor_power_data(
    r: &StructureConstantAlgebra,
    max_degree: usize,
    budget: &Budget,
) -> Result<(), TheoryError> {
    let dim = r.dim();
    let mut size = dim;
    for n in 0..=max_degree {
        budget.check(n, size)?;
        size = size.saturating_mul(dim);
    }
    Ok(())
}

/// The Hochschild complex of a unital associative algebra: degree n is
/// R^{⊗(n+1)}.
pub fn hochschild_complex(
    r: &StructureConstantAlgebra,
    max_degree: usize,
    budget: &Budget,
) -> Result<ChainComplex, TheoryError> {
    if r.kind() != AlgebraKind::Associative {
        return Err(TheoryError::KindMismatch {
            theory: TheoryTag::Hochschild,
            expected: "associative",
            got: r.kind().name(),
        });
    }
    if !r.is_unital() {
        return Err(TheoryError::NotUnital);
    }
    tensor_power_data(r, max_degree, budget)?;
    let dim = r.dim();
    let domain = r.domain();
    let tuple_count = |n: usize| dim.pow((n + 1) as u32);
    let unrank = |mut idx: usize, n: usize| -> Vec<usize> {
        let mut tuple = vec![0usize; n + 1];
        for slot in (0..=n).rev() {
            tuple[slot] = idx % dim;
            idx /= dim;
        }
        tuple
    };
    let rank = |tuple: &[usize]| -> usize { tuple.iter().fold(0, |acc, &d| acc * dim + d) };

    let mut spaces = Vec::new();
    for n in 0..=max_degree {
        let count = tuple_count(n);
        let labels: Vec<String> = (0..count)
            .map(|i| {
                unrank(i, n)
                    .iter()
                    .map(|&k| r.labels()[k].clone())
                    .join("*")
            })
            .collect();
        let diff = if n == 0 {
            None
        } else {
            let target_dim = tuple_count(n - 1);
            let columns = par::map_indexed(count, |col| {
                let tuple = unrank(col, n);
                let mut entries: Vec<(usize, Scalar)> = Vec::new();
                for i in 0..n {
                    let s = crate::exact_linalg::sign(domain, i as i64);
                    for (m, c) in r.basis_product(tuple[i], tuple[i + 1]).entries() {
                        let mut reduced = Vec::with_capacity(n);
                        reduced.extend_from_slice(&tuple[..i]);
                        reduced.push(*m);
                        reduced.extend_from_slice(&tuple[i + 2..]);
                        entries.push((rank(&reduced), s.clone() * c.clone()));
                    }
                }
                // wrap-around term (−1)^n a_n a_0 ⊗ …
                let s = crate::exact_linalg::sign(domain, n as i64);
                for (m, c) in r.basis_product(tuple[n], tuple[0]).entries() {
                    let mut reduced = Vec::with_capacity(n);
                    reduced.push(*m);
                    reduced.extend_from_slice(&tuple[1..n]);
                    entries.push((rank(&reduced), s.clone() * c.clone()));
                }
                SparseVec::from_entries(target_dim, entries).expect("Hochschild entries valid")
            });
            Some(SparseMatrix::from_columns(target_dim, domain, &columns))
        };
        spaces.push((labels, diff));
    }
    Ok(ChainComplex::new(0, domain, spaces)?)
}

/// The Connes quotient complex C^λ: degree n is R^{⊗(n+1)} / im(1 − t)
/// with the induced Hochschild boundary. Valid over ℚ, or over F_p when
/// p > max_degree + 1.
pub fn cyclic_complex(
    r: &StructureConstantAlgebra,
    max_degree: usize,
    budget: &Budget,
) -> Result<ChainComplex, TheoryError> {
    if let ScalarDomain::Fp(p) = r.domain() {
        if (p as usize) <= max_degree + 1 {
            return Err(TheoryError::BadCharacteristic {
                p,
                degree: max_degree,
            });
        }
    }
    let hochschild = hochschild_complex(r, max_degree, budget)?;
    let dim = r.dim();
    let domain = r.domain();
    let tuple_count = |n: usize| dim.pow((n + 1) as u32);
    let unrank = |mut idx: usize, n: usize| -> Vec<usize> {
        let mut tuple = vec![0usize; n + 1];
        for slot in (0..=n).rev() {
            tuple[slot] = idx % dim;
            idx /= dim;
        }
        tuple
    };
    let rank = |tuple: &[usize]| -> usize { tuple.iter().fold(0, |acc, &d| acc * dim + d) };

    // per-degree quotient by im(1 - t)
    let mut quotients = Vec::new();
    for n in 0..=max_degree {
        let count = tuple_count(n);
        let relations: Vec<SparseVec> = par::map_indexed(count, |i| {
            let tuple = unrank(i, n);
            let mut rotated = Vec::with_capacity(n + 1);
            rotated.push(tuple[n]);
            rotated.extend_from_slice(&tuple[..n]);
            let t_sign = crate::exact_linalg::sign(domain, n as i64);
            SparseVec::from_entries(count, vec![(i, domain.one()), (rank(&rotated), -t_sign)])
                .expect("relation entries valid")
        });
        let nonzero: Vec<SparseVec> = relations.into_iter().filter(|v| !v.is_zero()).collect();
        let sub = crate::algebra_core::span_basis(count, &nonzero, domain);
        quotients.push(quotient_basis(count, &sub, domain));
    }

    let mut spaces = Vec::new();
    for n in 0..=max_degree {
        let labels: Vec<String> = (0..quotients[n].dim).map(|i| format!("c{n}.{i}")).collect();
        let diff = if n == 0 {
            None
        } else {
            // induced boundary: project ∘ b ∘ section
            let b = hochschild.differential(n as i32);
            let m = quotients[n - 1]
                .projection
                .mat_mul(&b)
                .and_then(|pb| pb.mat_mul(&quotients[n].section))
                .expect("shapes align");
            Some(m)
        };
        spaces.push((labels, diff));
    }
    Ok(ChainComplex::new(0, domain, spaces)?)
}

/// Builds the requested theory complex up to internal degree
/// `max_degree + 1` and reports homology in degrees 0..=max_degree.
pub fn theory_homology(
    tag: TheoryTag,
    algebra: &StructureConstantAlgebra,
    max_degree: usize,
    budget: &Budget,
) -> Result<HomologyReport, TheoryError> {
    let complex = match tag {
        TheoryTag::CE => ce_complex(algebra, max_degree + 1, budget)?,
        TheoryTag::Leibniz => leibniz_complex(algebra, max_degree + 1, budget)?,
        TheoryTag::Hochschild => hochschild_complex(algebra, max_degree + 1, budget)?,
        TheoryTag::CyclicConnes => cyclic_complex(algebra, max_degree + 1, budget)?,
    };
    Ok(complex.homology(0..=max_degree as i32, false)?)
}

/// The map Λ*f of CE complexes induced by a Lie algebra morphism.
pub fn ce_complex_map(
    f: &AlgebraMorphism,
    max_degree: usize,
    budget: &Budget,
) -> Result<ComplexMap, TheoryError> {
    let source = ce_complex(&f.source, max_degree, budget)?;
    let target = ce_complex(&f.target, max_degree, budget)?;
    let tdim = f.target.dim();
    let domain = f.source.domain();
    let mut maps = BTreeMap::new();
    for n in 0..=max_degree {
        let src_combos: Vec<Vec<usize>> = (0..f.source.dim()).combinations(n).collect();
        let tgt_index: BTreeMap<Vec<usize>, usize> = (0..tdim).combinations(n).zip(0..).collect();
        let mut triplets = Vec::new();
        for (col, tuple) in src_combos.iter().enumerate() {
            // expand f(e_{i1}) ∧ … ∧ f(e_{in})
            let mut terms: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), domain.one())];
            for &i in tuple {
                let image = f
                    .matrix
                    .mat_vec(&SparseVec::unit(f.source.dim(), i, domain.one()));
                let mut next = Vec::new();
                for (prefix, coeff) in &terms {
                    for (m, c) in image.entries() {
                        if prefix.contains(m) {
                            continue;
                        }
                        let mut sorted = prefix.clone();
                        let pos = sorted.partition_point(|&x| x < *m);
                        sorted.insert(pos, *m);
                        // sign of moving the new factor from the back into place
                        let swaps = prefix.len() - pos;
                        let s = crate::exact_linalg::sign(domain, swaps as i64);
                        next.push((sorted, coeff.clone() * s * c.clone()));
                    }
                }
                terms = next;
            }
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (tuple, coeff) in terms {
                let row = tgt_index[&tuple];
                let entry = acc.remove(&row).map(|v| v + coeff.clone()).unwrap_or(coeff);
                if !entry.is_zero() {
                    acc.insert(row, entry);
                }
            }
            for (row, v) in acc {
                triplets.push((row, col, v));
            }
        }
        maps.insert(
            n as i32,
            SparseMatrix::from_triplets(tgt_index.len(), src_combos.len(), domain, triplets)
                .expect("map entries valid"),
        );
    }
    Ok(ComplexMap::new(source, target, maps)?)
}

/// Which matrix-side complex a stabilization sweep computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepSide {
    /// H_degree of the CE complex of sl_n(R); ring side HC_{degree-1}(R).
    CeSl,
    /// H_degree of the CE complex of uce(sl_n(R)); ring side HC_{degree-1}(R).
    CeUce,
    /// H_degree of the Leibniz complex of sl_n(R); ring side HH_{degree-1}(R).
    LeibnizSl,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub matrix_dim: Option<usize>,
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepTable {
    pub degree: usize,
    pub ring_degree: usize,
    pub ring_dim: usize,
    pub rows: Vec<SweepRow>,
    /// Whether the two largest completed n agree with the ring side.
    pub stable_match: bool,
}

impl SweepTable {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tmatrix_dim\tring_dim\tnote\n");
        for row in &self.rows {
            let md = row
                .matrix_dim
                .map(|d| d.to_string())
                .unwrap_or_else(|| "-".to_string());
            let note = if row.truncated { "TRUNCATED" } else { "" };
            out.push_str(&format!("{}\t{}\t{}\t{}\n", row.n, md, self.ring_dim, note));
        }
        out.push_str(&format!("stable_match\t{}\n", self.stable_match));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

/// Sweeps matrix sizes, comparing dim H_degree of the matrix-side complex
/// with the ring-side dimension in degree `degree - 1`.
pub fn stability_sweep(
    base: &StructureConstantAlgebra,
    side: SweepSide,
    degree: usize,
    n_range: impl IntoIterator<Item = usize>,
    budget: &Budget,
) -> Result<SweepTable, TheoryError> {
    assert!(degree >= 1, "matrix-side degree must be at least 1");
    let ring_degree = degree - 1;
    let ring_tag = match side {
        SweepSide::CeSl | SweepSide::CeUce => TheoryTag::CyclicConnes,
        SweepSide::LeibnizSl => TheoryTag::Hochschild,
    };
    let ring_dim = theory_homology(ring_tag, base, ring_degree, budget)?.dim(ring_degree as i32);

    let mut rows = Vec::new();
    for n in n_range {
        let kind = match side {
            SweepSide::LeibnizSl => AlgebraKind::Leibniz,
            _ => AlgebraKind::Lie,
        };
        let spec = MatrixAlgebraSpec::new(base.clone(), n, kind)?;
        let result: Result<usize, TheoryError> = (|| {
            let sl_data = sl(&spec)?;
            let algebra = match side {
                SweepSide::CeSl => sl_data.algebra,
                SweepSide::LeibnizSl => sl_data.algebra,
                SweepSide::CeUce => {
                    let lie = sl_data.algebra.as_kind(AlgebraKind::Lie)?;
                    uce(&lie, AlgebraKind::Lie)?.algebra
                }
            };
            let tag = match side {
                SweepSide::LeibnizSl => TheoryTag::Leibniz,
                _ => TheoryTag::CE,
            };
            let algebra = match (side, tag) {
                (SweepSide::LeibnizSl, _) => algebra.as_kind(AlgebraKind::Leibniz)?,
                _ => algebra,
            };
            Ok(theory_homology(tag, &algebra, degree, budget)?.dim(degree as i32))
        })();
        match result {
            Ok(d) => rows.push(SweepRow {
                n,
                matrix_dim: Some(d),
                truncated: false,
            }),
            Err(TheoryError::BudgetExceeded { .. }) => {
                rows.push(SweepRow {
                    n,
                    matrix_dim: None,
                    truncated: true,
                });
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let completed: Vec<usize> = rows.iter().filter_map(|r| r.matrix_dim).collect();
    let stable_match = completed.len() >= 2
        && completed[completed.len() - 1] == ring_dim
        && completed[completed.len() - 2] == ring_dim;
    Ok(SweepTable {
        degree,
        ring_degree,
        ring_dim,
        rows,
        stable_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_families::{rings, sl_n_q};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn ce_of_abelian_has_binomial_homology() {
        let g = StructureConstantAlgebra::abelian(AlgebraKind::Lie, ScalarDomain::Rational, 4);
        let h = theory_homology(TheoryTag::CE, &g, 3, &b()).unwrap();
        for n in 0..=3usize {
            assert_eq!(h.dim(n as i32), binomial(4, n), "degree {n}");
        }
    }

    #[test]
    fn ce_of_sl2() {
        let s = sl_n_q(2);
        let h = theory_homology(TheoryTag::CE, &s.algebra, 3, &b()).unwrap();
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(1), 0);
        assert_eq!(h.dim(2), 0);
        assert_eq!(h.dim(3), 1);
    }

    #[test]
    fn ce_h1_is_abelianization() {
        let g = crate::algebra_core::tests_support::two_dim_solvable();
        let h = theory_homology(TheoryTag::CE, &g, 1, &b()).unwrap();
        assert_eq!(h.dim(1), 1);
    }

    #[test]
    fn leibniz_of_abelian_has_power_homology() {
        let g = StructureConstantAlgebra::abelian(AlgebraKind::Leibniz, ScalarDomain::Rational, 2);
        let h = theory_homology(TheoryTag::Leibniz, &g, 3, &b()).unwrap();
        for n in 0..=3usize {
            assert_eq!(h.dim(n as i32), 2usize.pow(n as u32), "degree {n}");
        }
    }

    #[test]
    fn leibniz_h1_is_abelianization() {
        let g = crate::algebra_core::tests_support::two_dim_solvable();
        let h = theory_homology(TheoryTag::Leibniz, &g, 1, &b()).unwrap();
        assert_eq!(h.dim(1), 1);
    }

    #[test]
    fn hochschild_of_field() {
        let r = rings::rationals();
        let h = theory_homology(TheoryTag::Hochschild, &r, 3, &b()).unwrap();
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(1), 0);
        assert_eq!(h.dim(2), 0);
        assert_eq!(h.dim(3), 0);
    }

    #[test]
    fn hochschild_h0_is_commutator_quotient() {
        let m2 = rings::matrix_ring(2);
        let h = theory_homology(TheoryTag::Hochschild, &m2, 0, &b()).unwrap();
        assert_eq!(h.dim(0), 1);
        let comm = rings::truncated_poly(3);
        let h = theory_homology(TheoryTag::Hochschild, &comm, 0, &b()).unwrap();
        assert_eq!(h.dim(0), 3);
    }

    #[test]
    fn hochschild_rejects_nonunital() {
        // the span of t, t^2 in Q[t]/t^3 is associative but has no unit
        let domain = ScalarDomain::Rational;
        let mut products = BTreeMap::new();
        products.insert((0, 0), SparseVec::unit(2, 1, domain.one()));
        let r = StructureConstantAlgebra::new(
            AlgebraKind::Associative,
            domain,
            vec!["t".into(), "t2".into()],
            products,
        )
        .unwrap();
        assert!(matches!(
            hochschild_complex(&r, 2, &b()),
            Err(TheoryError::NotUnital)
        ));
    }

    #[test]
    fn cyclic_of_field_is_periodic() {
        let r = rings::rationals();
        let h = theory_homology(TheoryTag::CyclicConnes, &r, 3, &b()).unwrap();
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(1), 0);
        assert_eq!(h.dim(2), 1);
        assert_eq!(h.dim(3), 0);
    }

    #[test]
    fn cyclic_h0_is_commutator_quotient() {
        for r in [
            rings::dual_numbers(),
            rings::matrix_ring(2),
            rings::upper_triangular(2),
        ] {
            let hh = theory_homology(TheoryTag::Hochschild, &r, 0, &b()).unwrap();
            let hc = theory_homology(TheoryTag::CyclicConnes, &r, 0, &b()).unwrap();
            assert_eq!(hh.dim(0), hc.dim(0));
        }
    }

    #[test]
    fn cyclic_rejects_small_characteristic() {
        let f2 = ScalarDomain::fp(2).unwrap();
        let mut products = BTreeMap::new();
        products.insert((0, 0), SparseVec::unit(1, 0, f2.one()));
        let r =
            StructureConstantAlgebra::new(AlgebraKind::Associative, f2, vec!["1".into()], products)
                .unwrap();
        assert!(matches!(
            cyclic_complex(&r, 3, &b()),
            Err(TheoryError::BadCharacteristic { .. })
        ));
    }

    #[test]
    fn budget_aborts_predictably() {
        let r = rings::matrix_ring(2);
        let tiny = Budget { max_basis: 10 };
        assert!(matches!(
            hochschild_complex(&r, 3, &tiny),
            Err(TheoryError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn induced_map_sl2_into_gl2_kills_h1() {
        use crate::matrix_families::{gl, MatrixAlgebraSpec};
        let spec = MatrixAlgebraSpec::new(rings::rationals(), 2, AlgebraKind::Lie).unwrap();
        let g = gl(&spec).unwrap();
        let s = sl(&spec).unwrap();
        let incl_matrix = s.inclusion.as_matrix(ScalarDomain::Rational);
        let f = AlgebraMorphism::new(s.algebra.clone(), g, incl_matrix).unwrap();
        let map = ce_complex_map(&f, 2, &b()).unwrap();
        let induced = map.induced_on_homology([1]).unwrap();
        // H1(sl2) = 0, so the induced map in degree 1 has rank 0
        assert_eq!(induced[&1].rows(), 1); // H1(gl2) = gl2/[gl2,gl2] = k
        assert_eq!(induced[&1].cols(), 0);
    }

    #[test]
    fn sweep_sl_ce_over_q() {
        let table = stability_sweep(&rings::rationals(), SweepSide::CeSl, 2, 2..=3, &b()).unwrap();
        assert_eq!(table.ring_dim, 0); // HC_1(Q) = 0
        let dims: Vec<usize> = table.rows.iter().filter_map(|r| r.matrix_dim).collect();
        assert_eq!(dims.len(), 2);
        // H_2(sl_n(Q)) = 0 for n >= 2 (Whitehead)
        assert_eq!(dims, vec![0, 0]);
        assert!(table.stable_match);
    }

    #[test]
    fn uce_kernel_dimension_matches_h2_in_both_theories() {
        use crate::algebra_core::uce;
        use crate::matrix_families::MatrixAlgebraSpec;
        // Lie side: sl_2 over the dual numbers
        let spec = MatrixAlgebraSpec::new(rings::dual_numbers(), 2, AlgebraKind::Lie).unwrap();
        let s = sl(&spec).unwrap();
        let ext = uce(&s.algebra, AlgebraKind::Lie).unwrap();
        let h2 = theory_homology(TheoryTag::CE, &s.algebra, 2, &b()).unwrap().dim(2);
        assert_eq!(ext.kernel_dim, h2, "uce kernel = H_2^CE");
        // Leibniz side: sl_2(Q) viewed as a Leibniz algebra
        let s2 = sl_n_q(2);
        let leib = s2.algebra.as_kind(AlgebraKind::Leibniz).unwrap();
        let ext = uce(&leib, AlgebraKind::Leibniz).unwrap();
        let hl2 = theory_homology(TheoryTag::Leibniz, &leib, 2, &b()).unwrap().dim(2);
        assert_eq!(ext.kernel_dim, hl2, "uce kernel = HL_2");
    }

    #[test]
    fn connes_boundary_descends_to_the_quotient() {
        // b maps im(1 - t) into im(1 - t): checked exactly on Q[e]/e2 in
        // degrees <= 3
        use crate::algebra_core::span_basis;
        use crate::exact_linalg::decompose;
        let r = rings::dual_numbers();
        let hochschild = hochschild_complex(&r, 3, &b()).unwrap();
        let dim = r.dim();
        let domain = r.domain();
        for n in 1..=3usize {
            let count = dim.pow((n + 1) as u32);
            let unrank = |mut idx: usize| -> Vec<usize> {
                let mut tuple = vec![0usize; n + 1];
                for slot in (0..=n).rev() {
                    tuple[slot] = idx % dim;
                    idx /= dim;
                }
                tuple
            };
            let rank_tuple =
                |tuple: &[usize]| -> usize { tuple.iter().fold(0, |acc, &d| acc * dim + d) };
            let relations: Vec<SparseVec> = (0..count)
                .filter_map(|i| {
                    let tuple = unrank(i);
                    let mut rotated = Vec::with_capacity(n + 1);
                    rotated.push(tuple[n]);
                    rotated.extend_from_slice(&tuple[..n]);
                    let t_sign = crate::exact_linalg::sign(domain, n as i64);
                    let v = SparseVec::from_entries(
                        count,
                        vec![(i, domain.one()), (rank_tuple(&rotated), -t_sign)],
                    )
                    .unwrap();
                    (!v.is_zero()).then_some(v)
                })
                .collect();
            let image_n = span_basis(count, &relations, domain);
            let lower_count = dim.pow(n as u32);
            let lower_relations: Vec<SparseVec> = (0..lower_count)
                .filter_map(|i| {
                    let mut idx = i;
                    let mut tuple = vec![0usize; n];
                    for slot in (0..n).rev() {
                        tuple[slot] = idx % dim;
                        idx /= dim;
                    }
                    let mut rotated = Vec::with_capacity(n);
                    rotated.push(tuple[n - 1]);
                    rotated.extend_from_slice(&tuple[..n - 1]);
                    let t_sign = crate::exact_linalg::sign(domain, (n - 1) as i64);
                    let r_idx = rotated.iter().fold(0, |acc, &d| acc * dim + d);
                    let v = SparseVec::from_entries(
                        lower_count,
                        vec![(i, domain.one()), (r_idx, -t_sign)],
                    )
                    .unwrap();
                    (!v.is_zero()).then_some(v)
                })
                .collect();
            let image_lower = span_basis(lower_count, &lower_relations, domain);
            let solver =
                decompose(&image_lower.as_matrix(domain)).solver;
            let b_matrix = hochschild.differential(n as i32);
            for v in image_n.vectors() {
                let bv = b_matrix.mat_vec(v);
                if !bv.is_zero() {
                    assert!(
                        solver.solve(&bv).is_some(),
                        "b(im(1-t)) must land in im(1-t) in degree {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn sweep_uce_side_over_q() {
        // dim H_3(uce(sl_n(Q))) = 1 = dim HC_2(Q) already from n = 2
        let table = stability_sweep(&rings::rationals(), SweepSide::CeUce, 3, 2..=3, &b()).unwrap();
        assert_eq!(table.ring_dim, 1);
        let dims: Vec<usize> = table.rows.iter().filter_map(|r| r.matrix_dim).collect();
        assert_eq!(dims, vec![1, 1]);
        assert!(table.stable_match);
    }

    #[test]
    fn sweep_leibniz_side_over_q() {
        // HL_2(sl_n(Q)) = HH_1(Q) = 0
        let table =
            stability_sweep(&rings::rationals(), SweepSide::LeibnizSl, 2, 2..=3, &b()).unwrap();
        assert_eq!(table.ring_dim, 0);
        let dims: Vec<usize> = table.rows.iter().filter_map(|r| r.matrix_dim).collect();
        assert_eq!(dims, vec![0, 0]);
        assert!(table.stable_match);
    }

    #[test]
    fn sweep_truncates_on_budget() {
        let tiny = Budget { max_basis: 50 };
        let table = stability_sweep(&rings::rationals(), SweepSide::CeSl, 2, 2..=6, &tiny).unwrap();
        assert!(table.rows.iter().any(|r| r.truncated));
    }
}
