//! Truncated free algebras S(O, V) on graded generators, computed
//! weight by weight as symmetric-group coinvariants O(w) ⊗_{Σ_w} V^{⊗w}.
//!
//! The Σ_w action preserves the multiset of generators in a word, so every
//! weight splits into blocks indexed by generator content; each block is a
//! small quotient computed independently, which keeps multi-generator
//! presentations tractable.

use std::collections::BTreeMap;

use crate::exact_linalg::{quotient_basis, Quotient, Scalar, SparseVec};
use crate::par;

use super::operad::OperadTruncation;
use super::OperadError;

/// One coinvariant block: all (operad basis element, word) pairs whose
/// word has a fixed generator content.
pub struct Block {
    pub weight: usize,
    pub content: Vec<usize>,
    /// ambient basis: (operad basis index, word) pairs, ordered.
    pub ambient: Vec<(usize, Vec<usize>)>,
    pub ambient_index: BTreeMap<(usize, Vec<usize>), usize>,
    pub quotient: Quotient,
    /// homological degree of each quotient basis element.
    pub degrees: Vec<i64>,
    /// representative ambient pair of each quotient basis element.
    pub representatives: Vec<(usize, Vec<usize>)>,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.quotient.dim
    }
}

/// Distinct permutations of a sorted multiset, lexicographic.
fn multiset_words(content: &[usize]) -> Vec<Vec<usize>> {
    let mut current = content.to_vec();
    let mut out = Vec::new();
    loop {
        out.push(current.clone());
        let n = current.len();
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| current[j] > current[i])
            .expect("successor");
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

fn build_block(
    operad: &OperadTruncation,
    gen_degrees: &[i64],
    weight: usize,
    content: Vec<usize>,
) -> Block {
    let domain = operad.domain;
    let op_dim = operad.dim(weight);
    let words = multiset_words(&content);
    let mut ambient = Vec::with_capacity(op_dim * words.len());
    for o in 0..op_dim {
        for w in &words {
            ambient.push((o, w.clone()));
        }
    }
    let ambient_index: BTreeMap<(usize, Vec<usize>), usize> =
        ambient.iter().cloned().zip(0..).collect();
    let n = ambient.len();

    // relations: (s_j · o) ⊗ w − ε · o ⊗ (w with j, j+1 swapped)
    let mut relations: Vec<SparseVec> = Vec::new();
    if weight >= 2 {
        let comp = &operad.components[&weight];
        for (o, w) in &ambient {
            for j in 0..weight - 1 {
                let acted =
                    comp.transpositions[j].mat_vec(&SparseVec::unit(op_dim, *o, domain.one()));
                let mut swapped = w.clone();
                swapped.swap(j, j + 1);
                let eps = if gen_degrees[w[j]].rem_euclid(2) == 1
                    && gen_degrees[w[j + 1]].rem_euclid(2) == 1
                {
                    -domain.one()
                } else {
                    domain.one()
                };
                let mut entries: Vec<(usize, Scalar)> = acted
                    .entries()
                    .iter()
                    .map(|(m, c)| (ambient_index[&(*m, w.clone())], c.clone()))
                    .collect();
                entries.push((ambient_index[&(*o, swapped)], -eps));
                if let Ok(v) = SparseVec::from_entries(n, entries) {
                    if !v.is_zero() {
                        relations.push(v);
                    }
                }
            }
        }
    }
    let sub = crate::algebra_core::span_basis(n, &relations, domain);
    let quotient = quotient_basis(n, &sub, domain);
    let mut degrees = Vec::with_capacity(quotient.dim);
    let mut representatives = Vec::with_capacity(quotient.dim);
    for q in 0..quotient.dim {
        let col = quotient.section.column(q);
        let (amb_idx, _) = col
            .entries()
            .first()
            .expect("section columns are unit vectors");
        let (o, w) = &ambient[*amb_idx];
        let d = operad.degree_of(weight, *o) + w.iter().map(|&g| gen_degrees[g]).sum::<i64>();
        degrees.push(d);
        representatives.push((*o, w.clone()));
    }
    Block {
        weight,
        content,
        ambient,
        ambient_index,
        quotient,
        degrees,
        representatives,
    }
}

/// The weight- and degree-truncated free algebra on named graded
/// generators over a truncated operad.
pub struct FreeAlgebra {
    pub operad: OperadTruncation,
    pub generator_names: Vec<String>,
    pub generator_degrees: Vec<i64>,
    pub weight_max: usize,
    pub degree_max: i64,
    pub blocks: BTreeMap<(usize, Vec<usize>), Block>,
    /// global basis per homological degree: (block key, index in block).
    pub degree_basis: BTreeMap<i64, Vec<((usize, Vec<usize>), usize)>>,
}

/// A coordinate in the global graded basis.
pub type GlobalIndex = ((usize, Vec<usize>), usize);

impl FreeAlgebra {
    pub fn new(
        operad: OperadTruncation,
        generators: Vec<(String, i64)>,
        weight_max: usize,
        degree_max: i64,
    ) -> Result<Self, OperadError> {
        if weight_max > operad.arity_max && weight_max > 1 {
            return Err(OperadError::ArityOutOfRange {
                arity: weight_max,
                bound: operad.arity_max,
            });
        }
        let names: Vec<String> = generators.iter().map(|(n, _)| n.clone()).collect();
        let degs: Vec<i64> = generators.iter().map(|(_, d)| *d).collect();
        if let Some(&d) = degs.iter().find(|&&d| d < 0) {
            return Err(OperadError::DegreeOutOfRange {
                degree: d,
                bound: super::DEGREE_HARD_BOUND,
            });
        }

        // enumerate contents (sorted multisets) with total generator degree
        // within range
        let mut blocks = BTreeMap::new();
        let mut contents: Vec<Vec<usize>> = vec![Vec::new()];
        for w in 1..=weight_max {
            let mut next = Vec::new();
            for c in &contents {
                let start = c.last().copied().unwrap_or(0);
                for g in start..names.len() {
                    let mut c2 = c.clone();
                    c2.push(g);
                    next.push(c2);
                }
            }
            contents = next;
            if w >= 2 && operad.dim(w) == 0 {
                continue;
            }
            for c in &contents {
                let min_degree: i64 = c.iter().map(|&g| degs[g]).sum();
                if min_degree > degree_max {
                    continue;
                }
                let block = build_block(&operad, &degs, w, c.clone());
                if block.dim() > 0 {
                    blocks.insert((w, c.clone()), block);
                }
            }
        }

        let mut degree_basis: BTreeMap<i64, Vec<GlobalIndex>> = BTreeMap::new();
        for (key, block) in &blocks {
            for (idx, &d) in block.degrees.iter().enumerate() {
                if d <= degree_max {
                    degree_basis.entry(d).or_default().push((key.clone(), idx));
                }
            }
        }
        Ok(FreeAlgebra {
            operad,
            generator_names: names,
            generator_degrees: degs,
            weight_max,
            degree_max,
            blocks,
            degree_basis,
        })
    }

    pub fn dim_in_degree(&self, degree: i64) -> usize {
        self.degree_basis.get(&degree).map_or(0, |v| v.len())
    }

    /// Dimension of the weight-w slice in the given degree.
    pub fn dim_in_weight_degree(&self, weight: usize, degree: i64) -> usize {
        self.degree_basis
            .get(&degree)
            .map_or(0, |v| v.iter().filter(|((w, _), _)| *w == weight).count())
    }

    /// Position of a global basis element inside the ordered degree slice.
    pub fn position(&self, degree: i64, key: &GlobalIndex) -> Option<usize> {
        self.degree_basis
            .get(&degree)?
            .iter()
            .position(|k| k == key)
    }

    /// Expands `op ⊗ word` into global coordinates (inside its block).
    /// Returns pairs (global index, coefficient). Terms of weight above the
    /// truncation or missing blocks are dropped, matching the quotient
    /// truncation semantics.
    pub fn class_of(
        &self,
        weight: usize,
        op: &SparseVec,
        word: &[usize],
    ) -> Vec<(GlobalIndex, Scalar)> {
        if weight > self.weight_max {
            return Vec::new();
        }
        let mut content = word.to_vec();
        content.sort_unstable();
        let Some(block) = self.blocks.get(&(weight, content.clone())) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for (o, c) in op.entries() {
            let amb = block.ambient_index[&(*o, word.to_vec())];
            let col = block.quotient.projection.column(amb);
            for (q, v) in col.entries() {
                out.push((((weight, content.clone()), *q), v.clone() * c.clone()));
            }
        }
        out
    }

    /// The generator `g` as a weight-1 class.
    pub fn generator_class(&self, g: usize) -> Vec<(GlobalIndex, Scalar)> {
        let op = SparseVec::unit(1, 0, self.operad.domain.one());
        self.class_of(1, &op, &[g])
    }
}

/// Weight-graded dimensions of S(O, V) for a graded space V given by
/// per-degree dimensions; generators are anonymous.
pub fn free_algebra_dims(
    operad: &OperadTruncation,
    v_dims: &[(i64, usize)],
    weight_max: usize,
) -> Result<Vec<usize>, OperadError> {
    let mut gens = Vec::new();
    for &(degree, count) in v_dims {
        for i in 0..count {
            gens.push((format!("v{degree}.{i}"), degree));
        }
    }
    let degree_max = gens.iter().map(|(_, d)| *d).max().unwrap_or(0) * weight_max as i64
        + super::DEGREE_HARD_BOUND;
    let fa = FreeAlgebra::new(operad.clone(), gens, weight_max, degree_max)?;
    let mut out = vec![0usize; weight_max + 1];
    let results: Vec<(usize, usize)> =
        par::map_slice(&fa.blocks.keys().cloned().collect::<Vec<_>>(), |key| {
            (key.0, fa.blocks[key].dim())
        });
    for (w, d) in results {
        out[w] += d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::ScalarDomain;
    use crate::operad_kit::classical::{classical_operad, ClassicalOperad};

    fn q() -> ScalarDomain {
        ScalarDomain::Rational
    }

    #[test]
    fn polynomial_algebra_weights() {
        // S(Com, one even generator): dimension 1 in every weight
        let com = classical_operad(ClassicalOperad::Com, 5, q()).unwrap();
        let dims = free_algebra_dims(&com, &[(0, 1)], 5).unwrap();
        assert_eq!(dims[1..], [1, 1, 1, 1, 1]);
    }

    #[test]
    fn tensor_algebra_weights() {
        // S(As, V) with dim V = 2: weight n has dimension 2^n
        let asop = classical_operad(ClassicalOperad::As, 4, q()).unwrap();
        let dims = free_algebra_dims(&asop, &[(0, 2)], 4).unwrap();
        assert_eq!(dims[1..], [2, 4, 8, 16]);
    }

    #[test]
    fn free_lie_on_one_even_generator_vanishes_in_weight_two() {
        let lie = classical_operad(ClassicalOperad::Lie, 4, q()).unwrap();
        let dims = free_algebra_dims(&lie, &[(0, 1)], 4).unwrap();
        assert_eq!(dims[1], 1);
        assert_eq!(dims[2], 0, "[x,x] = 0 for even x");
        assert_eq!(dims[3], 0);
    }

    #[test]
    fn free_lie_witt_dimensions_two_generators() {
        // Witt: dims 2, 1, 2, 3 in weights 1..4
        let lie = classical_operad(ClassicalOperad::Lie, 4, q()).unwrap();
        let dims = free_algebra_dims(&lie, &[(0, 2)], 4).unwrap();
        assert_eq!(dims[1..], [2, 1, 2, 3]);
    }

    #[test]
    fn odd_generator_square_survives_for_lie() {
        // graded Lie: [x,x] != 0 when x is odd
        let lie = classical_operad(ClassicalOperad::Lie, 4, q()).unwrap();
        let dims = free_algebra_dims(&lie, &[(1, 1)], 4).unwrap();
        assert_eq!(dims[1], 1);
        assert_eq!(dims[2], 1, "[x,x] survives for odd x");
        assert_eq!(dims[3], 0, "[x,[x,x]] = 0 by graded Jacobi over Q");
    }

    #[test]
    fn commutative_odd_square_vanishes_over_q() {
        let com = classical_operad(ClassicalOperad::Com, 4, q()).unwrap();
        let dims = free_algebra_dims(&com, &[(1, 1)], 4).unwrap();
        assert_eq!(dims[1], 1);
        assert_eq!(dims[2], 0, "x² = 0 for odd x over Q");
    }

    #[test]
    fn commutative_odd_square_survives_over_f2() {
        let f2 = ScalarDomain::fp(2).unwrap();
        let com = classical_operad(ClassicalOperad::Com, 4, f2).unwrap();
        let dims = free_algebra_dims(&com, &[(1, 1)], 4).unwrap();
        assert_eq!(dims[2], 1, "x² survives in characteristic 2");
    }

    #[test]
    fn leibniz_free_algebra_is_tensor_module() {
        let leib = classical_operad(ClassicalOperad::Leib, 4, q()).unwrap();
        let dims = free_algebra_dims(&leib, &[(0, 1)], 4).unwrap();
        assert_eq!(dims[1..], [1, 1, 1, 1]);
    }
}
