//! The free operad on a truncated Σ-module, with basis the rooted trees
//! whose internal vertices are labeled by module generators.
//!
//! Basis trees are kept canonical: at every vertex the children are sorted
//! by their minimal leaf. The Σ_n action relabels leaves and
//! recanonicalizes, acting on vertex labels and collecting Koszul signs
//! from reordered graded subtrees; composition grafts a tree into a leaf,
//! which preserves canonical form because leaf relabelings are monotone.

use std::collections::BTreeMap;

use crate::exact_linalg::{Scalar, ScalarDomain, SparseMatrix, SparseVec};

use super::operad::OperadTruncation;
use super::sigma::{koszul_perm_sign, SigmaComponent, SigmaModuleTruncation};
use super::OperadError;

/// A rooted tree with numbered leaves and labeled internal vertices; the
/// canonical-form invariant (children sorted by minimal leaf) is maintained
/// by the constructors in this module.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LabeledTree {
    Leaf(usize),
    Node {
        label: usize,
        children: Vec<LabeledTree>,
    },
}

impl LabeledTree {
    fn min_leaf(&self) -> usize {
        match self {
            LabeledTree::Leaf(l) => *l,
            LabeledTree::Node { children, .. } => children
                .iter()
                .map(|c| c.min_leaf())
                .min()
                .expect("vertices have children"),
        }
    }

    fn degree(&self, module: &SigmaModuleTruncation) -> i64 {
        match self {
            LabeledTree::Leaf(_) => 0,
            LabeledTree::Node { label, children } => {
                let own = module.components[&children.len()].degrees[*label];
                own + children.iter().map(|c| c.degree(module)).sum::<i64>()
            }
        }
    }

    fn leaf_count(&self) -> usize {
        match self {
            LabeledTree::Leaf(_) => 1,
            LabeledTree::Node { children, .. } => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    fn relabel(&self, map: &dyn Fn(usize) -> usize) -> LabeledTree {
        match self {
            LabeledTree::Leaf(l) => LabeledTree::Leaf(map(*l)),
            LabeledTree::Node { label, children } => LabeledTree::Node {
                label: *label,
                children: children.iter().map(|c| c.relabel(map)).collect(),
            },
        }
    }

    pub fn render(&self, module: &SigmaModuleTruncation) -> String {
        match self {
            LabeledTree::Leaf(l) => (l + 1).to_string(),
            LabeledTree::Node { label, children } => {
                let name = &module.components[&children.len()].labels[*label];
                let inner: Vec<String> = children.iter().map(|c| c.render(module)).collect();
                format!("{name}({})", inner.join(","))
            }
        }
    }

    /// Degrees of the DFS label sequence strictly after the given leaf;
    /// used for the Koszul sign of grafting a graded tree.
    fn degrees_after_leaf(&self, leaf: usize, module: &SigmaModuleTruncation) -> Option<i64> {
        match self {
            LabeledTree::Leaf(l) => {
                if *l == leaf {
                    Some(0)
                } else {
                    None
                }
            }
            LabeledTree::Node { children, .. } => {
                for (idx, child) in children.iter().enumerate() {
                    if let Some(after) = child.degrees_after_leaf(leaf, module) {
                        let later: i64 = children[idx + 1..].iter().map(|c| c.degree(module)).sum();
                        return Some(after + later);
                    }
                }
                None
            }
        }
    }
}

/// Sorts children by minimal leaf at every vertex, acting on labels and
/// collecting Koszul signs; returns the expansion in canonical trees.
fn canonicalize(
    tree: &LabeledTree,
    module: &SigmaModuleTruncation,
    domain: ScalarDomain,
) -> Vec<(Scalar, LabeledTree)> {
    match tree {
        LabeledTree::Leaf(l) => vec![(domain.one(), LabeledTree::Leaf(*l))],
        LabeledTree::Node { label, children } => {
            let k = children.len();
            // canonicalize children independently
            let child_combos: Vec<Vec<(Scalar, LabeledTree)>> = children
                .iter()
                .map(|c| canonicalize(c, module, domain))
                .collect();
            // sorting permutation: position t of the raw list holds the
            // child of rank pi[t] among the minima
            let mins: Vec<usize> = children.iter().map(|c| c.min_leaf()).collect();
            let mut order: Vec<usize> = (0..k).collect();
            order.sort_by_key(|&t| mins[t]);
            let mut pi = vec![0usize; k];
            for (rank, &raw_pos) in order.iter().enumerate() {
                pi[raw_pos] = rank;
            }
            // canonical-order child degrees (degree is stable under
            // canonicalization since actions preserve degree)
            let canon_degrees: Vec<i64> = order
                .iter()
                .map(|&raw| children[raw].degree(module))
                .collect();
            let sign = koszul_perm_sign(&canon_degrees, &pi);
            let sign = if sign >= 0 {
                domain.one()
            } else {
                -domain.one()
            };
            // label transforms by the action of pi
            let comp = &module.components[&k];
            let acted = comp.act(&pi, &SparseVec::unit(comp.dim(), *label, domain.one()));

            let mut out = Vec::new();
            // cartesian product over child expansions, in canonical order
            let mut selections: Vec<(Scalar, Vec<LabeledTree>)> = vec![(sign, Vec::new())];
            for &raw_pos in &order {
                let mut next = Vec::new();
                for (coef, prefix) in &selections {
                    for (c2, t2) in &child_combos[raw_pos] {
                        let mut p = prefix.clone();
                        p.push(t2.clone());
                        next.push((coef.clone() * c2.clone(), p));
                    }
                }
                selections = next;
            }
            for (coef, canon_children) in selections {
                for (lidx, lc) in acted.entries() {
                    out.push((
                        coef.clone() * lc.clone(),
                        LabeledTree::Node {
                            label: *lidx,
                            children: canon_children.clone(),
                        },
                    ));
                }
            }
            out
        }
    }
}

/// Partitions of the index range 0..n into exactly k blocks listed by
/// first element (restricted growth strings).
fn partitions_into_blocks(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    fn rec(
        pos: usize,
        used: usize,
        n: usize,
        k: usize,
        assignment: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if pos == n {
            if used == k {
                let mut blocks = vec![Vec::new(); k];
                for (i, &b) in assignment.iter().enumerate() {
                    blocks[b].push(i);
                }
                out.push(blocks);
            }
            return;
        }
        // prune: remaining positions must be able to open the missing blocks
        if used + (n - pos) < k {
            return;
        }
        for b in 0..=used.min(k - 1) {
            assignment[pos] = b;
            rec(pos + 1, used.max(b + 1), n, k, assignment, out);
        }
    }
    rec(0, 0, n, k, &mut assignment, &mut out);
    out
}

fn enumerate_trees(leafset: &[usize], module: &SigmaModuleTruncation) -> Vec<LabeledTree> {
    debug_assert!(leafset.len() >= 2);
    let mut out = Vec::new();
    for k in 2..=leafset.len() {
        if module.dim(k) == 0 {
            continue;
        }
        for blocks in partitions_into_blocks(leafset.len(), k) {
            // blocks of positions -> blocks of leaf values (sorted input)
            let leaf_blocks: Vec<Vec<usize>> = blocks
                .iter()
                .map(|b| b.iter().map(|&p| leafset[p]).collect())
                .collect();
            // child choices per block
            let child_options: Vec<Vec<LabeledTree>> = leaf_blocks
                .iter()
                .map(|b| {
                    if b.len() == 1 {
                        vec![LabeledTree::Leaf(b[0])]
                    } else {
                        enumerate_trees(b, module)
                    }
                })
                .collect();
            let mut selections: Vec<Vec<LabeledTree>> = vec![Vec::new()];
            for options in &child_options {
                let mut next = Vec::new();
                for prefix in &selections {
                    for opt in options {
                        let mut p = prefix.clone();
                        p.push(opt.clone());
                        next.push(p);
                    }
                }
                selections = next;
            }
            for children in selections {
                for label in 0..module.dim(k) {
                    out.push(LabeledTree::Node {
                        label,
                        children: children.clone(),
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// Grafts `inner` into leaf `slot` of `outer`, renumbering leaves; the
/// result is canonical, with a Koszul sign when the grafted tree is graded.
fn graft(
    outer: &LabeledTree,
    slot: usize,
    inner: &LabeledTree,
    module: &SigmaModuleTruncation,
    domain: ScalarDomain,
) -> (Scalar, LabeledTree) {
    let k = inner.leaf_count();
    let shifted_inner = inner.relabel(&|l| l + slot);
    fn substitute(t: &LabeledTree, slot: usize, k: usize, inner: &LabeledTree) -> LabeledTree {
        match t {
            LabeledTree::Leaf(l) => {
                if *l == slot {
                    inner.clone()
                } else if *l > slot {
                    LabeledTree::Leaf(*l + k - 1)
                } else {
                    LabeledTree::Leaf(*l)
                }
            }
            LabeledTree::Node { label, children } => LabeledTree::Node {
                label: *label,
                children: children
                    .iter()
                    .map(|c| substitute(c, slot, k, inner))
                    .collect(),
            },
        }
    }
    let grafted = substitute(outer, slot, k, &shifted_inner);
    // Koszul: the inner label block moves past the outer labels that sit
    // after the grafted leaf in DFS order
    let after = outer
        .degrees_after_leaf(slot, module)
        .expect("slot is a leaf of the outer tree");
    let sign_exp = inner.degree(module) * after;
    let sign = if sign_exp.rem_euclid(2) == 0 {
        domain.one()
    } else {
        -domain.one()
    };
    (sign, grafted)
}

/// The free operad on a Σ-module, truncated at `arity_max`.
pub fn free_operad(
    module: &SigmaModuleTruncation,
    arity_max: usize,
) -> Result<OperadTruncation, OperadError> {
    if arity_max > super::ARITY_HARD_BOUND {
        return Err(OperadError::ArityOutOfRange {
            arity: arity_max,
            bound: super::ARITY_HARD_BOUND,
        });
    }
    if arity_max > module.arity_max {
        return Err(OperadError::ArityOutOfRange {
            arity: arity_max,
            bound: module.arity_max,
        });
    }
    let domain = module.domain;
    let mut bases: BTreeMap<usize, Vec<LabeledTree>> = BTreeMap::new();
    let mut index: BTreeMap<usize, BTreeMap<LabeledTree, usize>> = BTreeMap::new();
    for n in 2..=arity_max {
        let leafset: Vec<usize> = (0..n).collect();
        let trees = enumerate_trees(&leafset, module);
        for t in &trees {
            let d = t.degree(module);
            if d.abs() > super::DEGREE_HARD_BOUND {
                return Err(OperadError::DegreeOutOfRange {
                    degree: d,
                    bound: super::DEGREE_HARD_BOUND,
                });
            }
        }
        index.insert(n, trees.iter().cloned().zip(0..).collect());
        bases.insert(n, trees);
    }

    let mut components = BTreeMap::new();
    for n in 2..=arity_max {
        let basis = &bases[&n];
        let idx = &index[&n];
        let dim = basis.len();
        let mut transpositions = Vec::new();
        for j in 0..n - 1 {
            let mut sj: Vec<usize> = (0..n).collect();
            sj.swap(j, j + 1);
            let mut triplets = Vec::new();
            for (col, t) in basis.iter().enumerate() {
                let relabeled = t.relabel(&|l| sj[l]);
                for (coef, canon) in canonicalize(&relabeled, module, domain) {
                    triplets.push((idx[&canon], col, coef));
                }
            }
            transpositions.push(
                SparseMatrix::from_triplets(dim, dim, domain, triplets)
                    .expect("action entries valid"),
            );
        }
        components.insert(
            n,
            SigmaComponent {
                labels: basis.iter().map(|t| t.render(module)).collect(),
                degrees: basis.iter().map(|t| t.degree(module)).collect(),
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
            let tidx = &index[&(m + k - 1)];
            let tdim = bases[&(m + k - 1)].len();
            for slot in 0..m {
                let table: Vec<Vec<SparseVec>> = bases[&m]
                    .iter()
                    .map(|a| {
                        bases[&k]
                            .iter()
                            .map(|b| {
                                let (sign, t) = graft(a, slot, b, module, domain);
                                SparseVec::from_entries(tdim, vec![(tidx[&t], sign)])
                                    .expect("graft lands in the basis")
                            })
                            .collect()
                    })
                    .collect();
                compositions.insert((m, k, slot), table);
            }
        }
    }

    Ok(OperadTruncation {
        name: "free".into(),
        domain,
        arity_max,
        components,
        compositions,
        eval_words: None,
    })
}
