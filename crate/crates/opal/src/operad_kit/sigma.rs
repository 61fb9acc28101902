//! Truncated Σ-modules: per-arity graded components with symmetric-group
//! actions given by the images of adjacent transpositions.

use std::collections::BTreeMap;

use crate::exact_linalg::{ScalarDomain, SparseMatrix, SparseVec};

use super::OperadError;

/// One arity component: labeled graded basis plus the action matrices of
/// the adjacent transpositions s_1, …, s_{n-1}.
#[derive(Clone, Debug)]
pub struct SigmaComponent {
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
    pub transpositions: Vec<SparseMatrix>,
}

impl SigmaComponent {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Checks the Coxeter relations of Σ_n on the generator matrices:
    /// involutivity, braid, and commutation at distance ≥ 2.
    pub fn check_coxeter(&self, arity: usize) -> Result<(), OperadError> {
        let n = self.dim();
        if self.transpositions.len() + 1 != arity {
            return Err(OperadError::BadActionData {
                arity,
                expected: arity - 1,
                got: self.transpositions.len(),
            });
        }
        if self.degrees.len() != n {
            return Err(OperadError::BadActionData {
                arity,
                expected: n,
                got: self.degrees.len(),
            });
        }
        let id = SparseMatrix::identity(n, self.domain_or_default());
        for (i, s) in self.transpositions.iter().enumerate() {
            if (s.rows(), s.cols()) != (n, n) {
                return Err(OperadError::BadActionData {
                    arity,
                    expected: n,
                    got: s.rows(),
                });
            }
            let sq = s.mat_mul(s).expect("square shape");
            if sq != id {
                return Err(OperadError::CoxeterViolation {
                    arity,
                    relation: format!("s{}^2 != 1", i + 1),
                });
            }
        }
        for i in 0..self.transpositions.len().saturating_sub(1) {
            let a = &self.transpositions[i];
            let b = &self.transpositions[i + 1];
            let aba = a.mat_mul(b).unwrap().mat_mul(a).unwrap();
            let bab = b.mat_mul(a).unwrap().mat_mul(b).unwrap();
            if aba != bab {
                return Err(OperadError::CoxeterViolation {
                    arity,
                    relation: format!("braid at s{} s{}", i + 1, i + 2),
                });
            }
        }
        for i in 0..self.transpositions.len() {
            for j in (i + 2)..self.transpositions.len() {
                let a = &self.transpositions[i];
                let b = &self.transpositions[j];
                if a.mat_mul(b).unwrap() != b.mat_mul(a).unwrap() {
                    return Err(OperadError::CoxeterViolation {
                        arity,
                        relation: format!("commutation s{} s{}", i + 1, j + 1),
                    });
                }
            }
        }
        Ok(())
    }

    fn domain_or_default(&self) -> ScalarDomain {
        self.transpositions
            .first()
            .map(|m| m.domain())
            .unwrap_or(ScalarDomain::Rational)
    }

    /// Applies a full permutation (one-line notation, `perm[i]` = image of
    /// letter i) to a coefficient vector, via a factorization into adjacent
    /// transpositions.
    pub fn act(&self, perm: &[usize], v: &SparseVec) -> SparseVec {
        let factors = factor_adjacent(perm);
        let mut out = v.clone();
        for &f in factors.iter().rev() {
            out = self.transpositions[f].mat_vec(&out);
        }
        out
    }
}

/// Writes `perm` as s_{v1} ∘ s_{v2} ∘ … ∘ s_{vm} (value transpositions,
/// 0-based: s_v swaps v and v+1), applied right to left.
pub fn factor_adjacent(perm: &[usize]) -> Vec<usize> {
    let n = perm.len();
    let mut sigma: Vec<usize> = perm.to_vec();
    let mut out = Vec::new();
    loop {
        // positions of each value
        let mut pos = vec![0usize; n];
        for (p, &v) in sigma.iter().enumerate() {
            pos[v] = p;
        }
        // find adjacent values out of order
        let Some(v) = (0..n.saturating_sub(1)).find(|&v| pos[v] > pos[v + 1]) else {
            break;
        };
        out.push(v);
        // sigma <- s_v ∘ sigma: replace values v <-> v+1
        for entry in sigma.iter_mut() {
            if *entry == v {
                *entry = v + 1;
            } else if *entry == v + 1 {
                *entry = v;
            }
        }
    }
    out
}

/// Koszul sign of rearranging homogeneous tensor factors with the given
/// degrees (listed in canonical order) into the order `pi`: output slot t
/// receives factor `pi[t]`.
pub fn koszul_perm_sign(degrees: &[i64], pi: &[usize]) -> i64 {
    let mut sign = 1i64;
    for s in 0..pi.len() {
        for t in (s + 1)..pi.len() {
            if pi[s] > pi[t]
                && degrees[pi[s]].rem_euclid(2) == 1
                && degrees[pi[t]].rem_euclid(2) == 1
            {
                sign = -sign;
            }
        }
    }
    sign
}

/// A Σ-module truncated to arities 2..=arity_max.
#[derive(Clone, Debug)]
pub struct SigmaModuleTruncation {
    pub domain: ScalarDomain,
    pub arity_max: usize,
    pub components: BTreeMap<usize, SigmaComponent>,
}

impl SigmaModuleTruncation {
    pub fn new(
        domain: ScalarDomain,
        arity_max: usize,
        components: BTreeMap<usize, SigmaComponent>,
    ) -> Result<Self, OperadError> {
        for (&arity, comp) in &components {
            if !(2..=arity_max).contains(&arity) {
                return Err(OperadError::ArityOutOfRange {
                    arity,
                    bound: arity_max,
                });
            }
            comp.check_coxeter(arity)?;
        }
        Ok(SigmaModuleTruncation {
            domain,
            arity_max,
            components,
        })
    }

    /// A single generator of the given arity and degree with the trivial
    /// Σ-action.
    pub fn single_generator(
        domain: ScalarDomain,
        arity: usize,
        degree: i64,
        arity_max: usize,
    ) -> Self {
        let comp = SigmaComponent {
            labels: vec!["m".to_string()],
            degrees: vec![degree],
            transpositions: vec![SparseMatrix::identity(1, domain); arity - 1],
        };
        let mut components = BTreeMap::new();
        components.insert(arity, comp);
        SigmaModuleTruncation {
            domain,
            arity_max,
            components,
        }
    }

    pub fn dim(&self, arity: usize) -> usize {
        self.components.get(&arity).map_or(0, |c| c.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_reconstructs_permutation() {
        let perm = vec![2usize, 0, 3, 1];
        let factors = factor_adjacent(&perm);
        // rebuild: sigma = s_{v1} ∘ … ∘ s_{vm}
        let mut sigma: Vec<usize> = (0..perm.len()).collect();
        for &v in factors.iter().rev() {
            for entry in sigma.iter_mut() {
                if *entry == v {
                    *entry = v + 1;
                } else if *entry == v + 1 {
                    *entry = v;
                }
            }
        }
        assert_eq!(sigma, perm);
    }

    #[test]
    fn identity_needs_no_factors() {
        assert!(factor_adjacent(&[0, 1, 2]).is_empty());
    }

    #[test]
    fn koszul_sign_examples() {
        // swapping two odd factors is a sign
        assert_eq!(koszul_perm_sign(&[1, 1], &[1, 0]), -1);
        // odd past even is free
        assert_eq!(koszul_perm_sign(&[1, 2], &[1, 0]), 1);
        assert_eq!(koszul_perm_sign(&[3, 1, 1], &[2, 1, 0]), -1);
    }

    #[test]
    fn sign_action_passes_coxeter() {
        let domain = ScalarDomain::Rational;
        let minus = SparseMatrix::identity(1, domain).scale(&-domain.one());
        let comp = SigmaComponent {
            labels: vec!["b".into()],
            degrees: vec![0],
            transpositions: vec![minus.clone(), minus],
        };
        assert!(comp.check_coxeter(3).is_ok());
    }
}
