//! Multilinear word models of the classical operads.
//!
//! As(n) is modeled on the multilinear words of the free associative
//! algebra (permutations read as multiplication orders), Leib(n) on
//! left-normed bracket words of the free Leibniz algebra (again all n!
//! words), and Lie(n) on the commutator expansions of left-normed words
//! inside As(n), where the words starting with the first letter form the
//! classical basis of size (n-1)!.

use std::collections::BTreeMap;

use crate::exact_linalg::{Scalar, ScalarDomain, SparseVec};

/// A multilinear element: word (letter sequence) -> coefficient.
pub type WordElem = BTreeMap<Vec<usize>, Scalar>;

pub fn single(word: Vec<usize>, domain: ScalarDomain) -> WordElem {
    let mut m = BTreeMap::new();
    m.insert(word, domain.one());
    m
}

fn add_term(acc: &mut WordElem, word: Vec<usize>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.remove(&word) {
        None => {
            acc.insert(word, c);
        }
        Some(old) => {
            let s = old + c;
            if !s.is_zero() {
                acc.insert(word, s);
            }
        }
    }
}

#[cfg(test)]
pub fn add(a: &WordElem, b: &WordElem) -> WordElem {
    let mut out = a.clone();
    for (w, c) in b {
        add_term(&mut out, w.clone(), c.clone());
    }
    out
}

#[cfg(test)]
pub fn scale(a: &WordElem, c: &Scalar) -> WordElem {
    if c.is_zero() {
        return WordElem::new();
    }
    a.iter()
        .map(|(w, v)| (w.clone(), v.clone() * c.clone()))
        .collect()
}

/// Concatenation product of the free associative algebra.
pub fn concat(a: &WordElem, b: &WordElem) -> WordElem {
    let mut out = WordElem::new();
    for (u, cu) in a {
        for (v, cv) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            add_term(&mut out, w, cu.clone() * cv.clone());
        }
    }
    out
}

/// Commutator `ab - ba` in the free associative algebra.
pub fn commutator(a: &WordElem, b: &WordElem) -> WordElem {
    let ab = concat(a, b);
    let ba = concat(b, a);
    let mut out = ab;
    for (w, c) in ba {
        add_term(&mut out, w, -c);
    }
    out
}

/// The expansion of the left-normed bracket word [[…[w0,w1],…],wk] as
/// nested commutators in the tensor algebra.
pub fn lie_expansion(word: &[usize], domain: ScalarDomain) -> WordElem {
    let mut acc = single(vec![word[0]], domain);
    for &l in &word[1..] {
        acc = commutator(&acc, &single(vec![l], domain));
    }
    acc
}

/// The free Leibniz bracket on left-normed normal forms. Words denote
/// left-normed brackets; the result is re-expanded to normal form via
/// [x, [p, l]] = [[x, p], l] − [[x, l], p].
pub fn leibniz_bracket(a: &WordElem, b: &WordElem, domain: ScalarDomain) -> WordElem {
    let mut out = WordElem::new();
    for (u, cu) in a {
        for (v, cv) in b {
            let t = leibniz_bracket_words(u, v, domain);
            for (w, c) in t {
                add_term(&mut out, w, c * cu.clone() * cv.clone());
            }
        }
    }
    out
}

fn leibniz_bracket_words(u: &[usize], v: &[usize], domain: ScalarDomain) -> WordElem {
    if v.len() == 1 {
        let mut w = u.to_vec();
        w.push(v[0]);
        return single(w, domain);
    }
    let (prefix, last) = (&v[..v.len() - 1], v[v.len() - 1]);
    // [u, [p, l]] = [[u, p], l] − [[u, l], p]
    let up = leibniz_bracket_words(u, prefix, domain);
    let mut out = WordElem::new();
    for (w, c) in &up {
        let mut wl = w.clone();
        wl.push(last);
        add_term(&mut out, wl, c.clone());
    }
    let mut ul = u.to_vec();
    ul.push(last);
    let ulp = leibniz_bracket_words(&ul, prefix, domain);
    for (w, c) in ulp {
        add_term(&mut out, w, -c);
    }
    out
}

/// Relabels every letter of every word by the permutation.
pub fn relabel(a: &WordElem, perm: &[usize]) -> WordElem {
    a.iter()
        .map(|(w, c)| (w.iter().map(|&l| perm[l]).collect(), c.clone()))
        .collect()
}

/// Substitution renumbering for a partial composition at slot `i`
/// (0-based): outer letters below `i` stay, letter `i` expands to a block
/// of `k` letters, outer letters above shift by `k - 1`.
pub fn outer_letter(l: usize, i: usize, k: usize) -> usize {
    if l < i {
        l
    } else {
        debug_assert!(l > i);
        l + k - 1
    }
}

pub fn inner_letter(l: usize, i: usize) -> usize {
    l + i
}

/// Partial composition of associative words: substitute the block for the
/// occurrence of letter `i`.
pub fn compose_assoc_word(u: &[usize], i: usize, v: &[usize]) -> Vec<usize> {
    let k = v.len();
    let mut out = Vec::with_capacity(u.len() + k - 1);
    for &l in u {
        if l == i {
            out.extend(v.iter().map(|&m| inner_letter(m, i)));
        } else {
            out.push(outer_letter(l, i, k));
        }
    }
    out
}

/// Partial composition of left-normed Leibniz words: re-evaluates the
/// outer word as an iterated bracket with slot `i` replaced by the inner
/// word.
pub fn compose_leibniz_word(u: &[usize], i: usize, v: &[usize], domain: ScalarDomain) -> WordElem {
    let k = v.len();
    let arg = |l: usize| -> WordElem {
        if l == i {
            single(v.iter().map(|&m| inner_letter(m, i)).collect(), domain)
        } else {
            single(vec![outer_letter(l, i, k)], domain)
        }
    };
    let mut acc = arg(u[0]);
    for &l in &u[1..] {
        acc = leibniz_bracket(&acc, &arg(l), domain);
    }
    acc
}

/// All permutations of 0..n-1 in lexicographic order.
pub fn all_words(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| current[j] > current[i])
            .expect("successor exists");
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// Coordinates of a multilinear element in a word basis; `None` when a
/// word falls outside the basis.
pub fn coords_in(
    basis_index: &BTreeMap<Vec<usize>, usize>,
    elem: &WordElem,
    dim: usize,
) -> Option<SparseVec> {
    let mut entries = Vec::new();
    for (w, c) in elem {
        let &idx = basis_index.get(w)?;
        entries.push((idx, c.clone()));
    }
    Some(SparseVec::from_entries(dim, entries).expect("coordinates valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarDomain {
        ScalarDomain::Rational
    }

    #[test]
    fn all_words_counts() {
        assert_eq!(all_words(1).len(), 1);
        assert_eq!(all_words(3).len(), 6);
        assert_eq!(all_words(4).len(), 24);
        // lexicographically sorted
        let w = all_words(3);
        assert_eq!(w[0], vec![0, 1, 2]);
        assert_eq!(w[5], vec![2, 1, 0]);
    }

    #[test]
    fn lie_expansion_of_bracket() {
        // [x0, x1] = 01 - 10
        let e = lie_expansion(&[0, 1], q());
        assert_eq!(e.len(), 2);
        assert_eq!(e[&vec![0, 1]], q().one());
        assert_eq!(e[&vec![1, 0]], -q().one());
    }

    #[test]
    fn jacobi_holds_in_expansions() {
        // [[0,1],2] + [[1,2],0] + [[2,0],1] = 0
        let a = lie_expansion(&[0, 1, 2], q());
        let b = lie_expansion(&[1, 2, 0], q());
        let c = lie_expansion(&[2, 0, 1], q());
        assert!(add(&add(&a, &b), &c).is_empty());
    }

    #[test]
    fn leibniz_identity_in_normal_forms() {
        // [x, [y, z]] = [[x,y],z] - [[x,z],y] with x = word [0], y = [1], z = [2]
        let x = single(vec![0], q());
        let yz = leibniz_bracket(&single(vec![1], q()), &single(vec![2], q()), q());
        let lhs = leibniz_bracket(&x, &yz, q());
        let xy = leibniz_bracket(&x, &single(vec![1], q()), q());
        let xz = leibniz_bracket(&x, &single(vec![2], q()), q());
        let r1 = leibniz_bracket(&xy, &single(vec![2], q()), q());
        let r2 = leibniz_bracket(&xz, &single(vec![1], q()), q());
        let rhs = add(&r1, &scale(&r2, &-q().one()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn assoc_substitution() {
        // (a0 a1) with slot 1 <- (b0 b1): word 01 ∘_1 01 = 0 1 2
        assert_eq!(compose_assoc_word(&[0, 1], 1, &[0, 1]), vec![0, 1, 2]);
        assert_eq!(compose_assoc_word(&[1, 0], 0, &[1, 0]), vec![2, 1, 0]);
    }
}
