//! Concrete models of the classical operads Com, As, Lie, Leib at a finite
//! arity bound, with composition tables computed from their word models.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::exact_linalg::{decompose, ScalarDomain, Solver, SparseMatrix, SparseVec};

use super::operad::{apply_perm_to_word, OperadTruncation};
use super::sigma::SigmaComponent;
use super::words;
use super::OperadError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalOperad {
    Com,
    As,
    Lie,
    Leib,
}

impl FromStr for ClassicalOperad {
    type Err = OperadError;
    fn from_str(s: &str) -> Result<Self, OperadError> {
        match s {
            "com" | "Com" => Ok(ClassicalOperad::Com),
            "as" | "As" => Ok(ClassicalOperad::As),
            "lie" | "Lie" => Ok(ClassicalOperad::Lie),
            "leib" | "Leib" | "leibniz" => Ok(ClassicalOperad::Leib),
            other => Err(OperadError::UnknownOperad(other.to_string())),
        }
    }
}

/// Builds the named classical operad up to the arity bound.
pub fn classical_operad(
    name: ClassicalOperad,
    arity_max: usize,
    domain: ScalarDomain,
) -> Result<OperadTruncation, OperadError> {
    if arity_max < 2 || arity_max > super::ARITY_HARD_BOUND {
        return Err(OperadError::ArityOutOfRange {
            arity: arity_max,
            bound: super::ARITY_HARD_BOUND,
        });
    }
    match name {
        ClassicalOperad::Com => Ok(build_com(arity_max, domain)),
        ClassicalOperad::As => Ok(build_as(arity_max, domain)),
        ClassicalOperad::Leib => Ok(build_leib(arity_max, domain)),
        ClassicalOperad::Lie => build_lie(arity_max, domain),
    }
}

fn build_com(arity_max: usize, domain: ScalarDomain) -> OperadTruncation {
    let mut components = BTreeMap::new();
    let mut compositions = BTreeMap::new();
    let mut eval_words = BTreeMap::new();
    for n in 2..=arity_max {
        components.insert(
            n,
            SigmaComponent {
                labels: vec![format!("c{n}")],
                degrees: vec![0],
                transpositions: vec![SparseMatrix::identity(1, domain); n - 1],
            },
        );
        eval_words.insert(n, vec![(0..n).collect::<Vec<usize>>()]);
    }
    for m in 2..=arity_max {
        for k in 2..=arity_max {
            if m + k - 1 > arity_max {
                continue;
            }
            for slot in 0..m {
                compositions.insert(
                    (m, k, slot),
                    vec![vec![SparseVec::unit(1, 0, domain.one())]],
                );
            }
        }
    }
    OperadTruncation {
        name: "com".into(),
        domain,
        arity_max,
        components,
        compositions,
        eval_words: Some(eval_words),
    }
}

fn word_label(prefix: &str, w: &[usize]) -> String {
    let digits: String = w.iter().map(|d| d.to_string()).collect();
    format!("{prefix}{digits}")
}

/// Permutation-matrix component for a word basis under letter relabeling.
fn word_component(
    prefix: &str,
    wordlist: &[Vec<usize>],
    n: usize,
    domain: ScalarDomain,
) -> (SigmaComponent, BTreeMap<Vec<usize>, usize>) {
    let index: BTreeMap<Vec<usize>, usize> = wordlist.iter().cloned().zip(0..).collect();
    let mut transpositions = Vec::new();
    for j in 0..n - 1 {
        let mut sj: Vec<usize> = (0..n).collect();
        sj.swap(j, j + 1);
        let triplets = wordlist.iter().enumerate().map(|(col, w)| {
            let relabeled = apply_perm_to_word(&sj, w);
            (index[&relabeled], col, domain.one())
        });
        transpositions.push(
            SparseMatrix::from_triplets(wordlist.len(), wordlist.len(), domain, triplets)
                .expect("permutation matrix"),
        );
    }
    let comp = SigmaComponent {
        labels: wordlist.iter().map(|w| word_label(prefix, w)).collect(),
        degrees: vec![0; wordlist.len()],
        transpositions,
    };
    (comp, index)
}

fn build_as(arity_max: usize, domain: ScalarDomain) -> OperadTruncation {
    let mut components = BTreeMap::new();
    let mut indices: BTreeMap<usize, BTreeMap<Vec<usize>, usize>> = BTreeMap::new();
    let mut eval_words = BTreeMap::new();
    let mut wordlists: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for n in 2..=arity_max {
        let wl = words::all_words(n);
        let (comp, index) = word_component("a", &wl, n, domain);
        components.insert(n, comp);
        indices.insert(n, index);
        eval_words.insert(n, wl.clone());
        wordlists.insert(n, wl);
    }
    let mut compositions = BTreeMap::new();
    for m in 2..=arity_max {
        for k in 2..=arity_max {
            if m + k - 1 > arity_max {
                continue;
            }
            let target = &indices[&(m + k - 1)];
            let tdim = wordlists[&(m + k - 1)].len();
            for slot in 0..m {
                let table: Vec<Vec<SparseVec>> = wordlists[&m]
                    .iter()
                    .map(|u| {
                        wordlists[&k]
                            .iter()
                            .map(|v| {
                                let w = words::compose_assoc_word(u, slot, v);
                                SparseVec::unit(tdim, target[&w], domain.one())
                            })
                            .collect()
                    })
                    .collect();
                compositions.insert((m, k, slot), table);
            }
        }
    }
    OperadTruncation {
        name: "as".into(),
        domain,
        arity_max,
        components,
        compositions,
        eval_words: Some(eval_words),
    }
}

fn build_leib(arity_max: usize, domain: ScalarDomain) -> OperadTruncation {
    let mut components = BTreeMap::new();
    let mut indices: BTreeMap<usize, BTreeMap<Vec<usize>, usize>> = BTreeMap::new();
    let mut eval_words = BTreeMap::new();
    let mut wordlists: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for n in 2..=arity_max {
        let wl = words::all_words(n);
        let (comp, index) = word_component("l", &wl, n, domain);
        components.insert(n, comp);
        indices.insert(n, index);
        eval_words.insert(n, wl.clone());
        wordlists.insert(n, wl);
    }
    let mut compositions = BTreeMap::new();
    for m in 2..=arity_max {
        for k in 2..=arity_max {
            if m + k - 1 > arity_max {
                continue;
            }
            let target = &indices[&(m + k - 1)];
            let tdim = wordlists[&(m + k - 1)].len();
            for slot in 0..m {
                let table: Vec<Vec<SparseVec>> = wordlists[&m]
                    .iter()
                    .map(|u| {
                        wordlists[&k]
                            .iter()
                            .map(|v| {
                                let elem = words::compose_leibniz_word(u, slot, v, domain);
                                words::coords_in(target, &elem, tdim)
                                    .expect("left-normed words close under composition")
                            })
                            .collect()
                    })
                    .collect();
                compositions.insert((m, k, slot), table);
            }
        }
    }
    OperadTruncation {
        name: "leib".into(),
        domain,
        arity_max,
        components,
        compositions,
        eval_words: Some(eval_words),
    }
}

/// Per-arity data for the Lie operad inside the group algebra: basis words,
/// their expansions, and a solver expressing expansions in the basis.
struct LieArity {
    basis_words: Vec<Vec<usize>>,
    assoc_index: BTreeMap<Vec<usize>, usize>,
    solver: Solver,
}

impl LieArity {
    fn build(n: usize, domain: ScalarDomain) -> Result<Self, OperadError> {
        let assoc_words = words::all_words(n);
        let assoc_index: BTreeMap<Vec<usize>, usize> =
            assoc_words.iter().cloned().zip(0..).collect();
        // left-normed words fixing the first letter form a basis of size (n-1)!
        let basis_words: Vec<Vec<usize>> =
            assoc_words.iter().filter(|w| w[0] == 0).cloned().collect();
        let columns: Vec<SparseVec> = basis_words
            .iter()
            .map(|w| {
                let e = words::lie_expansion(w, domain);
                words::coords_in(&assoc_index, &e, assoc_words.len()).expect("expansion fits")
            })
            .collect();
        let matrix = SparseMatrix::from_columns(assoc_words.len(), domain, &columns);
        let dec = decompose(&matrix);
        if dec.rank != basis_words.len() {
            return Err(OperadError::LieBasisRank {
                arity: n,
                expected: basis_words.len(),
                got: dec.rank,
            });
        }
        Ok(LieArity {
            basis_words,
            assoc_index,
            solver: dec.solver,
        })
    }

    fn coords(&self, elem: &words::WordElem) -> Option<SparseVec> {
        let v = words::coords_in(&self.assoc_index, elem, self.assoc_index.len())?;
        self.solver.solve(&v)
    }
}

fn build_lie(arity_max: usize, domain: ScalarDomain) -> Result<OperadTruncation, OperadError> {
    let mut data: BTreeMap<usize, LieArity> = BTreeMap::new();
    for n in 2..=arity_max {
        data.insert(n, LieArity::build(n, domain)?);
    }
    let mut components = BTreeMap::new();
    for n in 2..=arity_max {
        let la = &data[&n];
        let dim = la.basis_words.len();
        let mut transpositions = Vec::new();
        for j in 0..n - 1 {
            let mut sj: Vec<usize> = (0..n).collect();
            sj.swap(j, j + 1);
            let mut triplets = Vec::new();
            for (col, w) in la.basis_words.iter().enumerate() {
                let relabeled = words::relabel(&words::lie_expansion(w, domain), &sj);
                let coords = la.coords(&relabeled).expect("Lie closed under the action");
                for (row, v) in coords.entries() {
                    triplets.push((*row, col, v.clone()));
                }
            }
            transpositions.push(
                SparseMatrix::from_triplets(dim, dim, domain, triplets).expect("action matrix"),
            );
        }
        components.insert(
            n,
            SigmaComponent {
                labels: la.basis_words.iter().map(|w| word_label("b", w)).collect(),
                degrees: vec![0; dim],
                transpositions,
            },
        );
    }
    let mut compositions = BTreeMap::new();
    for m in 2..=arity_max {
        for k in 2..=arity_max {
            if m + k - 1 > arity_max {
                continue;
            }
            let target = &data[&(m + k - 1)];
            for slot in 0..m {
                let table: Vec<Vec<SparseVec>> = data[&m]
                    .basis_words
                    .iter()
                    .map(|u| {
                        let eu = words::lie_expansion(u, domain);
                        data[&k]
                            .basis_words
                            .iter()
                            .map(|v| {
                                let ev = words::lie_expansion(v, domain);
                                // substitute expansions inside the tensor algebra
                                let mut composed = words::WordElem::new();
                                for (wu, cu) in &eu {
                                    for (wv, cv) in &ev {
                                        let w = words::compose_assoc_word(wu, slot, wv);
                                        let c = cu.clone() * cv.clone();
                                        let prev = composed.remove(&w);
                                        let s = match prev {
                                            None => c,
                                            Some(p) => p + c,
                                        };
                                        if !s.is_zero() {
                                            composed.insert(w, s);
                                        }
                                    }
                                }
                                target
                                    .coords(&composed)
                                    .expect("Lie is closed under composition")
                            })
                            .collect()
                    })
                    .collect();
                compositions.insert((m, k, slot), table);
            }
        }
    }
    let eval_words: BTreeMap<usize, Vec<Vec<usize>>> = data
        .iter()
        .map(|(&n, la)| (n, la.basis_words.clone()))
        .collect();
    Ok(OperadTruncation {
        name: "lie".into(),
        domain,
        arity_max,
        components,
        compositions,
        eval_words: Some(eval_words),
    })
}
