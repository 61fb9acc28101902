//! Truncated operads: Σ-module components plus partial-composition tables,
//! with a May-axiom checker (equivariance, associativity, units) over all
//! composable basis triples within the arity bound.

use std::collections::BTreeMap;

use crate::exact_linalg::{Scalar, ScalarDomain, SparseVec};

use super::sigma::SigmaComponent;
use super::OperadError;

/// A truncated operad. Arity 1 is the implicit unit component; arities
/// 2..=arity_max carry explicit bases, actions and partial compositions.
#[derive(Clone, Debug)]
pub struct OperadTruncation {
    pub name: String,
    pub domain: ScalarDomain,
    pub arity_max: usize,
    pub components: BTreeMap<usize, SigmaComponent>,
    /// (m, k, slot) -> per (basis of O(m), basis of O(k)) the composite in
    /// O(m+k-1); slots are 0-based.
    pub(crate) compositions: BTreeMap<(usize, usize, usize), Vec<Vec<SparseVec>>>,
    /// For the classical word operads: per arity, an evaluation word per
    /// basis element (folded left to right through the algebra product).
    pub(crate) eval_words: Option<BTreeMap<usize, Vec<Vec<usize>>>>,
}

impl OperadTruncation {
    pub fn dim(&self, arity: usize) -> usize {
        if arity == 1 {
            1
        } else {
            self.components.get(&arity).map_or(0, |c| c.dim())
        }
    }

    pub fn degree_of(&self, arity: usize, idx: usize) -> i64 {
        if arity == 1 {
            0
        } else {
            self.components[&arity].degrees[idx]
        }
    }

    pub fn label_of(&self, arity: usize, idx: usize) -> String {
        if arity == 1 {
            "1".to_string()
        } else {
            self.components[&arity].labels[idx].clone()
        }
    }

    /// Applies a permutation to a coefficient vector in O(n).
    pub fn act(&self, arity: usize, perm: &[usize], v: &SparseVec) -> SparseVec {
        if arity == 1 {
            return v.clone();
        }
        self.components[&arity].act(perm, v)
    }

    /// Partial composition O(m) ⊗ O(k) → O(m+k-1) at the 0-based slot.
    pub fn compose(
        &self,
        m: usize,
        slot: usize,
        a: &SparseVec,
        k: usize,
        b: &SparseVec,
    ) -> Result<SparseVec, OperadError> {
        if m == 1 {
            // unit ∘ b = b
            let c = a.get(0).cloned().unwrap_or_else(|| self.domain.zero());
            return Ok(b.scale(&c));
        }
        if k == 1 {
            let c = b.get(0).cloned().unwrap_or_else(|| self.domain.zero());
            return Ok(a.scale(&c));
        }
        let target = m + k - 1;
        if target > self.arity_max {
            return Err(OperadError::ArityOutOfRange {
                arity: target,
                bound: self.arity_max,
            });
        }
        let table = self
            .compositions
            .get(&(m, k, slot))
            .ok_or(OperadError::MissingComposition { m, k, slot })?;
        let mut acc = SparseVec::zero(self.dim(target));
        for (i, ca) in a.entries() {
            for (j, cb) in b.entries() {
                let c = ca.clone() * cb.clone();
                acc = acc.axpy(&c, &table[*i][*j]);
            }
        }
        Ok(acc)
    }

    /// Runs the May-axiom suite: Coxeter relations per component, outer and
    /// inner equivariance on adjacent transpositions, and associativity of
    /// partial compositions on all basis triples within the bound.
    pub fn may_check(&self) -> Result<(), OperadError> {
        for (&arity, comp) in &self.components {
            comp.check_coxeter(arity)?;
        }
        self.check_equivariance()?;
        self.check_associativity()
    }

    fn basis_vec(&self, arity: usize, idx: usize) -> SparseVec {
        SparseVec::unit(self.dim(arity), idx, self.domain.one())
    }

    fn check_equivariance(&self) -> Result<(), OperadError> {
        let arities: Vec<usize> = self.components.keys().copied().collect();
        for &m in &arities {
            for &k in &arities {
                if m + k - 1 > self.arity_max || self.dim(m + k - 1) == 0 {
                    continue;
                }
                for slot in 0..m {
                    for a in 0..self.dim(m) {
                        for b in 0..self.dim(k) {
                            let ea = self.basis_vec(m, a);
                            let eb = self.basis_vec(k, b);
                            let base = self.compose(m, slot, &ea, k, &eb)?;
                            // outer: (s_j · a) ∘_{s_j(slot)} b = bp(s_j) · (a ∘_slot b)
                            for j in 0..m - 1 {
                                let mut sj: Vec<usize> = (0..m).collect();
                                sj.swap(j, j + 1);
                                let acted = self.act(m, &sj, &ea);
                                let new_slot = sj[slot];
                                let lhs = self.compose(m, new_slot, &acted, k, &eb)?;
                                let bp = block_permutation(m, slot, k, &sj);
                                let rhs = self.act(m + k - 1, &bp, &base);
                                if lhs != rhs {
                                    return Err(OperadError::MayViolation {
                                        law: "outer equivariance".into(),
                                        detail: format!("m={m} k={k} slot={slot} s{j} a={a} b={b}"),
                                    });
                                }
                            }
                            // inner: a ∘_slot (s_j · b) = s_{slot+j} · (a ∘_slot b)
                            for j in 0..k - 1 {
                                let mut sj: Vec<usize> = (0..k).collect();
                                sj.swap(j, j + 1);
                                let acted = self.act(k, &sj, &eb);
                                let lhs = self.compose(m, slot, &ea, k, &acted)?;
                                let mut inner: Vec<usize> = (0..m + k - 1).collect();
                                inner.swap(slot + j, slot + j + 1);
                                let rhs = self.act(m + k - 1, &inner, &base);
                                if lhs != rhs {
                                    return Err(OperadError::MayViolation {
                                        law: "inner equivariance".into(),
                                        detail: format!("m={m} k={k} slot={slot} s{j} a={a} b={b}"),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<(), OperadError> {
        let arities: Vec<usize> = self.components.keys().copied().collect();
        for &m in &arities {
            for &k in &arities {
                for &l in &arities {
                    if m + k + l - 2 > self.arity_max {
                        continue;
                    }
                    for a in 0..self.dim(m) {
                        for b in 0..self.dim(k) {
                            for c in 0..self.dim(l) {
                                self.check_assoc_triple(m, k, l, a, b, c)?;
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_assoc_triple(
        &self,
        m: usize,
        k: usize,
        l: usize,
        a: usize,
        b: usize,
        c: usize,
    ) -> Result<(), OperadError> {
        let ea = self.basis_vec(m, a);
        let eb = self.basis_vec(k, b);
        let ec = self.basis_vec(l, c);
        let deg_b = self.degree_of(k, b);
        let deg_c = self.degree_of(l, c);
        for i in 0..m {
            let ab = self.compose(m, i, &ea, k, &eb)?;
            for j in 0..m + k - 1 {
                let lhs = self.compose(m + k - 1, j, &ab, l, &ec)?;
                let rhs = if j >= i && j < i + k {
                    // nested: c lands inside b
                    let bc = self.compose(k, j - i, &eb, l, &ec)?;
                    self.compose(m, i, &ea, k + l - 1, &bc)?
                } else {
                    // disjoint slots: swap the order, with a Koszul sign
                    let (slot_c, slot_b) = if j < i {
                        (j, i + l - 1)
                    } else {
                        (j - k + 1, i)
                    };
                    let ac = self.compose(m, slot_c, &ea, l, &ec)?;
                    let swapped = self.compose(m + l - 1, slot_b, &ac, k, &eb)?;
                    let sign = crate::exact_linalg::sign(self.domain, deg_b * deg_c);
                    swapped.scale(&sign)
                };
                if lhs != rhs {
                    return Err(OperadError::MayViolation {
                        law: "associativity".into(),
                        detail: format!("m={m} k={k} l={l} a={a} b={b} c={c} i={i} j={j}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Full composition γ(a; b_0, …, b_{m-1}) obtained by composing the
    /// arguments right to left; Koszul signs from moving graded arguments
    /// past each other are the callers' concern (all classical operads are
    /// concentrated in degree 0).
    pub fn gamma(
        &self,
        m: usize,
        a: &SparseVec,
        args: &[(usize, SparseVec)],
    ) -> Result<SparseVec, OperadError> {
        assert_eq!(args.len(), m, "gamma needs one argument per slot");
        let mut acc = a.clone();
        let mut acc_arity = m;
        for slot in (0..m).rev() {
            let (k, ref b) = args[slot];
            acc = self.compose(acc_arity, slot, &acc, k, b)?;
            acc_arity = acc_arity + k - 1;
        }
        Ok(acc)
    }

    /// Evaluates an operad element on arguments in a structure-constant
    /// algebra of the matching kind, folding each basis word through the
    /// algebra product. Unavailable for operads without a word model.
    pub fn evaluate_on_algebra(
        &self,
        arity: usize,
        op: &SparseVec,
        algebra: &crate::algebra_core::StructureConstantAlgebra,
        args: &[SparseVec],
    ) -> Result<SparseVec, OperadError> {
        assert_eq!(args.len(), arity);
        let words = self
            .eval_words
            .as_ref()
            .and_then(|m| m.get(&arity))
            .ok_or(OperadError::NoEvaluationModel)?;
        let mut acc = SparseVec::zero(algebra.dim());
        for (idx, coeff) in op.entries() {
            let word = &words[*idx];
            let mut term = args[word[0]].clone();
            for &w in &word[1..] {
                term = algebra.product(&term, &args[w]);
            }
            acc = acc.axpy(coeff, &term);
        }
        Ok(acc)
    }
}

/// The permutation of m+k-1 inputs induced by permuting the m slots of the
/// outer operation when slot `i` carries a block of size k and the others
/// size 1: the value in block t at offset o moves to the total size of the
/// blocks sent below σ(t), plus o.
pub fn block_permutation(m: usize, i: usize, k: usize, sigma: &[usize]) -> Vec<usize> {
    let size = |t: usize| if t == i { k } else { 1 };
    let mut out = vec![0usize; m + k - 1];
    let mut value = 0usize;
    for t in 0..m {
        let offset_base: usize = (0..m).filter(|&s| sigma[s] < sigma[t]).map(size).sum();
        for o in 0..size(t) {
            out[value] = offset_base + o;
            value += 1;
        }
    }
    out
}

/// Composes two permutations given in one-line notation: (a ∘ b)(i) = a(b(i)).
pub fn compose_perms(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

/// Scalar Koszul sign of applying a permutation to graded word slots;
/// wraps the sigma helper for scalar use.
pub fn perm_action_sign(domain: ScalarDomain, degrees: &[i64], pi: &[usize]) -> Scalar {
    let s = super::sigma::koszul_perm_sign(degrees, pi);
    if s >= 0 {
        domain.one()
    } else {
        -domain.one()
    }
}

pub(crate) fn apply_perm_to_word(perm: &[usize], word: &[usize]) -> Vec<usize> {
    word.iter().map(|&l| perm[l]).collect()
}

#[cfg(test)]
pub(crate) fn perm_is_identity(perm: &[usize]) -> bool {
    perm.iter().enumerate().all(|(i, &v)| i == v)
}

#[cfg(test)]
pub(crate) fn invert_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; perm.len()];
    for (i, &v) in perm.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_permutation_matches_word_substitution() {
        // (s·a) ∘_{s(0)} b for a = word 01, b = word 01, s = swap:
        // composing words gives [1,2,0]; the block permutation must send
        // [0,1,2] to that word by relabeling.
        let s = vec![1usize, 0];
        let bp = block_permutation(2, 0, 2, &s);
        let base = vec![0usize, 1, 2];
        let relabeled = apply_perm_to_word(&bp, &base);
        assert_eq!(relabeled, vec![1, 2, 0]);
    }

    #[test]
    fn perm_helpers() {
        let p = vec![2usize, 0, 1];
        let inv = invert_perm(&p);
        assert!(perm_is_identity(&compose_perms(&p, &inv)));
    }
}
