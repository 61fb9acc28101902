//! Quasi-free presentations: free algebras on named graded generators with
//! a formal differential, doubly truncated in homological degree and
//! weight. Everything downstream (π₀, Quillen homology, telescopes, cones,
//! cofibers, the Hurewicz map) expands through this machinery.

use std::collections::BTreeMap;

use crate::complexes::{ChainComplex, ComplexMap, HomologyReport};
use crate::exact_linalg::{rank, Scalar, SparseMatrix, SparseVec};
use crate::operad_kit::free_algebra::{FreeAlgebra, GlobalIndex};
use crate::operad_kit::OperadTruncation;
use crate::par;

use super::PlusError;

/// One flat term: an operad basis element applied to generators. Weight-1
/// terms use arity 1 with the unit operad element.
#[derive(Clone, Debug)]
pub struct FormalTerm {
    pub coef: Scalar,
    pub arity: usize,
    pub op_index: usize,
    pub args: Vec<usize>,
}

/// A linear combination of flat terms.
#[derive(Clone, Debug, Default)]
pub struct FormalElement {
    pub terms: Vec<FormalTerm>,
}

impl FormalElement {
    pub fn zero() -> Self {
        FormalElement { terms: Vec::new() }
    }

    pub fn generator(g: usize, coef: Scalar) -> Self {
        FormalElement {
            terms: vec![FormalTerm {
                coef,
                arity: 1,
                op_index: 0,
                args: vec![g],
            }],
        }
    }

    pub fn term(coef: Scalar, arity: usize, op_index: usize, args: Vec<usize>) -> Self {
        assert_eq!(arity, args.len(), "term arity must match argument count");
        FormalElement {
            terms: vec![FormalTerm {
                coef,
                arity,
                op_index,
                args,
            }],
        }
    }

    pub fn add(mut self, other: FormalElement) -> FormalElement {
        self.terms.extend(other.terms);
        self
    }

    pub fn scale(mut self, c: &Scalar) -> FormalElement {
        for t in &mut self.terms {
            t.coef = t.coef.clone() * c.clone();
        }
        self
    }

    /// Homological degree of a term under the given generator degrees.
    fn term_degree(term: &FormalTerm, operad: &OperadTruncation, gen_degrees: &[i64]) -> i64 {
        operad.degree_of(term.arity, term.op_index)
            + term.args.iter().map(|&g| gen_degrees[g]).sum::<i64>()
    }

    /// Substitutes generator images into every term: the result of applying
    /// each term's operation to the images of its arguments. Term choices
    /// whose composed arity exceeds the operad truncation are dropped,
    /// matching the weight-truncation quotient semantics.
    pub fn substitute(
        &self,
        operad: &OperadTruncation,
        images: &[FormalElement],
    ) -> Result<FormalElement, PlusError> {
        let mut out = FormalElement::zero();
        for term in &self.terms {
            if term.arity == 1 {
                let img = images[term.args[0]].clone().scale(&term.coef);
                out = out.add(img);
                continue;
            }
            // cartesian product over single terms of each argument image
            let mut choices: Vec<(Scalar, Vec<&FormalTerm>)> =
                vec![(term.coef.clone(), Vec::new())];
            for &arg in &term.args {
                let mut next = Vec::new();
                for (c, prefix) in &choices {
                    for t in &images[arg].terms {
                        let mut p = prefix.clone();
                        p.push(t);
                        next.push((c.clone() * t.coef.clone(), p));
                    }
                }
                choices = next;
            }
            for (coef, parts) in choices {
                let total_arity: usize = parts.iter().map(|p| p.arity).sum();
                if total_arity > operad.arity_max {
                    continue;
                }
                // compose the operad parts right to left; concatenate words
                let mut acc =
                    SparseVec::unit(operad.dim(term.arity), term.op_index, operad.domain.one());
                let mut acc_arity = term.arity;
                for slot in (0..term.arity).rev() {
                    let part = parts[slot];
                    let b =
                        SparseVec::unit(operad.dim(part.arity), part.op_index, operad.domain.one());
                    acc = operad.compose(acc_arity, slot, &acc, part.arity, &b)?;
                    acc_arity = acc_arity + part.arity - 1;
                }
                let mut word = Vec::new();
                for part in &parts {
                    word.extend_from_slice(&part.args);
                }
                for (idx, v) in acc.entries() {
                    out.terms.push(FormalTerm {
                        coef: coef.clone() * v.clone(),
                        arity: acc_arity,
                        op_index: *idx,
                        args: word.clone(),
                    });
                }
            }
        }
        Ok(out)
    }
}

/// A free algebra on graded generators with a formal differential,
/// validated to lower degree by one and square to zero within the
/// truncation.
pub struct QuasiFreePresentation {
    pub algebra: FreeAlgebra,
    pub differentials: Vec<FormalElement>,
    degree_index: BTreeMap<i64, BTreeMap<GlobalIndex, usize>>,
}

impl QuasiFreePresentation {
    pub fn new(
        operad: OperadTruncation,
        generators: Vec<(String, i64)>,
        differentials: Vec<FormalElement>,
        weight_max: usize,
        degree_max: i64,
    ) -> Result<Self, PlusError> {
        if generators.len() != differentials.len() {
            return Err(PlusError::MalformedPresentation(
                "one differential per generator required".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for (name, degree) in &generators {
            if !seen.insert(name.clone()) {
                return Err(PlusError::MalformedPresentation(format!(
                    "duplicate generator name {name}"
                )));
            }
            if *degree < 0 {
                return Err(PlusError::NegativeDegree {
                    name: name.clone(),
                    degree: *degree,
                });
            }
        }
        let algebra = FreeAlgebra::new(operad, generators, weight_max, degree_max)?;
        // d lowers degree by exactly one on every term
        for (g, d) in differentials.iter().enumerate() {
            let expected = algebra.generator_degrees[g] - 1;
            for term in &d.terms {
                let td =
                    FormalElement::term_degree(term, &algebra.operad, &algebra.generator_degrees);
                if td != expected {
                    return Err(PlusError::DifferentialDegree {
                        generator: algebra.generator_names[g].clone(),
                        expected,
                        got: td,
                    });
                }
            }
        }
        let degree_index = algebra
            .degree_basis
            .iter()
            .map(|(&d, v)| (d, v.iter().cloned().zip(0..).collect()))
            .collect();
        let p = QuasiFreePresentation {
            algebra,
            differentials,
            degree_index,
        };
        p.check_d_squared()?;
        Ok(p)
    }

    pub fn operad(&self) -> &OperadTruncation {
        &self.algebra.operad
    }

    pub fn generator_count(&self) -> usize {
        self.algebra.generator_names.len()
    }

    pub fn weight_max(&self) -> usize {
        self.algebra.weight_max
    }

    pub fn degree_max(&self) -> i64 {
        self.algebra.degree_max
    }

    /// Coordinates of a formal element in the global graded basis.
    pub fn expand(&self, e: &FormalElement) -> BTreeMap<GlobalIndex, Scalar> {
        let mut out: BTreeMap<GlobalIndex, Scalar> = BTreeMap::new();
        for term in &e.terms {
            let op = SparseVec::unit(
                self.algebra.operad.dim(term.arity),
                term.op_index,
                self.algebra.operad.domain.one(),
            );
            for (key, c) in self.algebra.class_of(term.arity, &op, &term.args) {
                let add = c * term.coef.clone();
                match out.remove(&key) {
                    None => {
                        if !add.is_zero() {
                            out.insert(key, add);
                        }
                    }
                    Some(old) => {
                        let s = old + add;
                        if !s.is_zero() {
                            out.insert(key, s);
                        }
                    }
                }
            }
        }
        out
    }

    /// The differential of a global basis element, in global coordinates.
    /// Terms whose weight exceeds the truncation are dropped (the quotient
    /// by high weights is a subcomplex-free quotient, so d² stays exact).
    fn differential_of_basis(&self, key: &GlobalIndex) -> BTreeMap<GlobalIndex, Scalar> {
        let ((weight, content), idx) = key;
        let block = &self.algebra.blocks[&(*weight, content.clone())];
        let (op_idx, word) = &block.representatives[*idx];
        self.differential_of_pair(*weight, *op_idx, word)
    }

    fn differential_of_pair(
        &self,
        weight: usize,
        op_idx: usize,
        word: &[usize],
    ) -> BTreeMap<GlobalIndex, Scalar> {
        let operad = &self.algebra.operad;
        let domain = operad.domain;
        let op_degree = operad.degree_of(weight, op_idx);
        let mut out: BTreeMap<GlobalIndex, Scalar> = BTreeMap::new();
        let mut add = |key: GlobalIndex, c: Scalar| {
            if c.is_zero() {
                return;
            }
            match out.remove(&key) {
                None => {
                    out.insert(key, c);
                }
                Some(old) => {
                    let s = old + c;
                    if !s.is_zero() {
                        out.insert(key, s);
                    }
                }
            }
        };
        let op_vec = SparseVec::unit(operad.dim(weight), op_idx, domain.one());
        for slot in 0..weight {
            let g = word[slot];
            let dg = &self.differentials[g];
            if dg.terms.is_empty() {
                continue;
            }
            let prefix_degree: i64 = word[..slot]
                .iter()
                .map(|&h| self.algebra.generator_degrees[h])
                .sum();
            let leibniz_sign = crate::exact_linalg::sign(domain, op_degree + prefix_degree);
            for term in &dg.terms {
                let term_op_degree = operad.degree_of(term.arity, term.op_index);
                let koszul = crate::exact_linalg::sign(domain, term_op_degree * prefix_degree);
                let total_weight = weight + term.arity - 1;
                if total_weight > self.algebra.weight_max {
                    continue;
                }
                let part = SparseVec::unit(operad.dim(term.arity), term.op_index, domain.one());
                let composed = match operad.compose(weight, slot, &op_vec, term.arity, &part) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                let mut new_word = Vec::with_capacity(total_weight);
                new_word.extend_from_slice(&word[..slot]);
                new_word.extend_from_slice(&term.args);
                new_word.extend_from_slice(&word[slot + 1..]);
                let coef = leibniz_sign.clone() * koszul * term.coef.clone();
                for (key, c) in self.algebra.class_of(total_weight, &composed, &new_word) {
                    add(key, c * coef.clone());
                }
            }
        }
        out
    }

    /// The differential of an arbitrary formal element, in coordinates.
    pub fn differential_coords(&self, e: &FormalElement) -> BTreeMap<GlobalIndex, Scalar> {
        let mut out: BTreeMap<GlobalIndex, Scalar> = BTreeMap::new();
        for term in &e.terms {
            let piece = self.differential_of_pair(term.arity, term.op_index, &term.args);
            for (key, c) in piece {
                let add = c * term.coef.clone();
                match out.remove(&key) {
                    None => {
                        if !add.is_zero() {
                            out.insert(key, add);
                        }
                    }
                    Some(old) => {
                        let s = old + add;
                        if !s.is_zero() {
                            out.insert(key, s);
                        }
                    }
                }
            }
        }
        out
    }

    fn check_d_squared(&self) -> Result<(), PlusError> {
        for (g, d) in self.differentials.iter().enumerate() {
            let dd = self.differential_coords(d);
            if !dd.is_empty() {
                return Err(PlusError::DifferentialSquare {
                    generator: self.algebra.generator_names[g].clone(),
                });
            }
        }
        Ok(())
    }

    fn label_of(&self, key: &GlobalIndex) -> String {
        let ((weight, content), idx) = key;
        let block = &self.algebra.blocks[&(*weight, content.clone())];
        let (op_idx, word) = &block.representatives[*idx];
        if *weight == 1 {
            return self.algebra.generator_names[word[0]].clone();
        }
        let args: Vec<String> = word
            .iter()
            .map(|&g| self.algebra.generator_names[g].clone())
            .collect();
        format!(
            "{}({})",
            self.algebra.operad.label_of(*weight, *op_idx),
            args.join(",")
        )
    }

    /// The truncated underlying chain complex, degrees 0..=degree_max.
    pub fn to_chain_complex(&self) -> Result<ChainComplex, PlusError> {
        let domain = self.algebra.operad.domain;
        let mut spaces = Vec::new();
        for h in 0..=self.algebra.degree_max {
            let basis = self
                .algebra
                .degree_basis
                .get(&h)
                .cloned()
                .unwrap_or_default();
            let labels: Vec<String> = basis.iter().map(|k| self.label_of(k)).collect();
            let diff = if h == 0 {
                None
            } else {
                let lower = self.degree_index.get(&(h - 1));
                let target_dim = self.dim_in_degree(h - 1);
                let columns = par::map_slice(&basis, |key| {
                    let coords = self.differential_of_basis(key);
                    let entries = coords
                        .into_iter()
                        .filter_map(|(k, c)| lower.and_then(|m| m.get(&k)).map(|&row| (row, c)));
                    SparseVec::from_entries(target_dim, entries).expect("entries valid")
                });
                Some(SparseMatrix::from_columns(target_dim, domain, &columns))
            };
            spaces.push((labels, diff));
        }
        Ok(ChainComplex::new(0, domain, spaces)?)
    }

    pub fn dim_in_degree(&self, h: i64) -> usize {
        self.algebra.dim_in_degree(h)
    }

    /// The indecomposables complex: one basis element per generator, with
    /// the weight-1 (linear) part of the differential.
    pub fn quillen_complex(&self) -> Result<ChainComplex, PlusError> {
        let domain = self.algebra.operad.domain;
        let degs = &self.algebra.generator_degrees;
        let max_degree = degs.iter().copied().max().unwrap_or(0);
        let mut per_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (g, &d) in degs.iter().enumerate() {
            per_degree.entry(d).or_default().push(g);
        }
        let position: BTreeMap<usize, (i64, usize)> = per_degree
            .iter()
            .flat_map(|(&d, gens)| gens.iter().enumerate().map(move |(i, &g)| (g, (d, i))))
            .collect();
        let mut spaces = Vec::new();
        for h in 0..=max_degree {
            let gens = per_degree.get(&h).cloned().unwrap_or_default();
            let labels: Vec<String> = gens
                .iter()
                .map(|&g| self.algebra.generator_names[g].clone())
                .collect();
            let diff = if h == 0 {
                None
            } else {
                let target_dim = per_degree.get(&(h - 1)).map_or(0, |v| v.len());
                let mut triplets = Vec::new();
                for (col, &g) in gens.iter().enumerate() {
                    for term in &self.differentials[g].terms {
                        if term.arity != 1 {
                            continue;
                        }
                        let target = term.args[0];
                        let (_, row) = position[&target];
                        triplets.push((row, col, term.coef.clone()));
                    }
                }
                Some(SparseMatrix::from_triplets(
                    target_dim,
                    gens.len(),
                    domain,
                    triplets,
                )?)
            };
            spaces.push((labels, diff));
        }
        Ok(ChainComplex::new(0, domain, spaces)?)
    }

    /// Quillen homology of the presentation: homology of the
    /// indecomposables complex.
    pub fn quillen_homology(
        &self,
        degrees: impl IntoIterator<Item = i64>,
    ) -> Result<HomologyReport, PlusError> {
        let complex = self.quillen_complex()?;
        let wanted: Vec<i32> = degrees
            .into_iter()
            .map(|d| d as i32)
            .filter(|&d| d >= complex.lo() && d <= complex.hi())
            .collect();
        let mut report = complex.homology(wanted, false)?;
        // degrees outside the generator range are zero
        Ok({
            report.dims.retain(|_, _| true);
            report
        })
    }

    /// π₀ per weight: the degree-0 part modulo the image of the
    /// differential, reported through the weight filtration.
    pub fn pi0(&self) -> Pi0Report {
        let c0 = self
            .algebra
            .degree_basis
            .get(&0)
            .cloned()
            .unwrap_or_default();
        let c1 = self
            .algebra
            .degree_basis
            .get(&1)
            .cloned()
            .unwrap_or_default();
        let weights: Vec<usize> = (1..=self.algebra.weight_max).collect();
        let c0_weight: Vec<usize> = c0.iter().map(|((w, _), _)| *w).collect();
        let index0: BTreeMap<GlobalIndex, usize> = c0.iter().cloned().zip(0..).collect();
        let domain = self.algebra.operad.domain;
        // image columns
        let columns: Vec<SparseVec> = par::map_slice(&c1, |key| {
            let coords = self.differential_of_basis(key);
            let entries = coords
                .into_iter()
                .filter_map(|(k, c)| index0.get(&k).map(|&row| (row, c)));
            SparseVec::from_entries(c0.len(), entries).expect("entries valid")
        });
        let full = SparseMatrix::from_columns(c0.len(), domain, &columns);
        let total_rank = rank(&full);
        // F_w = dim C0_{<=w} − (rank d − rank of d projected to weights > w)
        let mut filtration: BTreeMap<usize, usize> = BTreeMap::new();
        for &w in &weights {
            let rows_above: Vec<usize> = (0..c0.len()).filter(|&r| c0_weight[r] > w).collect();
            let above_set: std::collections::BTreeSet<usize> = rows_above.iter().copied().collect();
            let projected = SparseMatrix::from_triplets(
                c0.len(),
                c1.len(),
                domain,
                full.iter()
                    .filter(|(r, _, _)| above_set.contains(r))
                    .map(|(r, c, v)| (r, c, v.clone())),
            )
            .expect("projection entries valid");
            let rank_above = rank(&projected);
            let dim_leq: usize = c0_weight.iter().filter(|&&cw| cw <= w).count();
            filtration.insert(w, dim_leq - (total_rank - rank_above));
        }
        let mut weight_dims = BTreeMap::new();
        let mut prev = 0usize;
        for &w in &weights {
            let f = filtration[&w];
            weight_dims.insert(w, f - prev);
            prev = f;
        }
        Pi0Report {
            weight_dims,
            total_dim: prev,
        }
    }

    /// The projection onto indecomposables as a chain map from the full
    /// truncated complex to the Quillen complex.
    pub fn indecomposables_map(&self) -> Result<ComplexMap, PlusError> {
        let full = self.to_chain_complex()?;
        let q = self.quillen_complex()?;
        let domain = self.algebra.operad.domain;
        let mut maps = BTreeMap::new();
        let degs = &self.algebra.generator_degrees;
        let mut per_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (g, &d) in degs.iter().enumerate() {
            per_degree.entry(d).or_default().push(g);
        }
        for h in 0..=self.algebra.degree_max {
            let basis = self
                .algebra
                .degree_basis
                .get(&h)
                .cloned()
                .unwrap_or_default();
            let gens = per_degree.get(&h).cloned().unwrap_or_default();
            if h > q.hi() as i64 {
                continue;
            }
            let mut triplets = Vec::new();
            for (col, ((w, content), idx)) in basis.iter().enumerate() {
                if *w != 1 {
                    continue;
                }
                let block = &self.algebra.blocks[&(*w, content.clone())];
                let (_, word) = &block.representatives[*idx];
                let g = word[0];
                let row = gens
                    .iter()
                    .position(|&x| x == g)
                    .expect("generator in degree slice");
                triplets.push((row, col, domain.one()));
            }
            maps.insert(
                h as i32,
                SparseMatrix::from_triplets(gens.len(), basis.len(), domain, triplets)?,
            );
        }
        Ok(ComplexMap::new(full, q, maps)?)
    }

    /// Per-(weight, degree) homology dimensions; requires the differential
    /// to preserve weight (all terms linear), which makes the complex
    /// weight-graded.
    pub fn weight_graded_homology(&self) -> Result<BTreeMap<(usize, i64), usize>, PlusError> {
        for d in &self.differentials {
            if d.terms.iter().any(|t| t.arity != 1) {
                return Err(PlusError::NotWeightGraded);
            }
        }
        let domain = self.algebra.operad.domain;
        let mut out = BTreeMap::new();
        for w in 1..=self.algebra.weight_max {
            // basis of weight w per degree
            let mut per_degree: BTreeMap<i64, Vec<GlobalIndex>> = BTreeMap::new();
            for (&d, keys) in &self.algebra.degree_basis {
                let slice: Vec<GlobalIndex> = keys
                    .iter()
                    .filter(|((kw, _), _)| *kw == w)
                    .cloned()
                    .collect();
                if !slice.is_empty() {
                    per_degree.insert(d, slice);
                }
            }
            if per_degree.is_empty() {
                continue;
            }
            let lo = 0i64;
            let hi = *per_degree.keys().max().unwrap();
            let mut spaces = Vec::new();
            for h in lo..=hi {
                let basis = per_degree.get(&h).cloned().unwrap_or_default();
                let labels: Vec<String> = basis.iter().map(|k| self.label_of(k)).collect();
                let diff = if h == lo {
                    None
                } else {
                    let lower = per_degree.get(&(h - 1)).cloned().unwrap_or_default();
                    let lower_index: BTreeMap<GlobalIndex, usize> =
                        lower.iter().cloned().zip(0..).collect();
                    let columns: Vec<SparseVec> = basis
                        .iter()
                        .map(|key| {
                            let coords = self.differential_of_basis(key);
                            let entries = coords
                                .into_iter()
                                .filter_map(|(k, c)| lower_index.get(&k).map(|&row| (row, c)));
                            SparseVec::from_entries(lower.len(), entries).expect("valid")
                        })
                        .collect();
                    Some(SparseMatrix::from_columns(lower.len(), domain, &columns))
                };
                spaces.push((labels, diff));
            }
            let complex = ChainComplex::new(lo as i32, domain, spaces)?;
            let h = complex.homology(complex.lo()..=complex.hi(), false)?;
            for (&d, &dim) in &h.dims {
                out.insert((w, d as i64), dim);
            }
        }
        Ok(out)
    }
}

/// Weight-filtered dimensions of π₀ of a presentation.
#[derive(Clone, Debug)]
pub struct Pi0Report {
    pub weight_dims: BTreeMap<usize, usize>,
    pub total_dim: usize,
}

impl Pi0Report {
    pub fn dim(&self, weight: usize) -> usize {
        self.weight_dims.get(&weight).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::ScalarDomain;
    use crate::operad_kit::{classical_operad, ClassicalOperad};

    fn q() -> ScalarDomain {
        ScalarDomain::Rational
    }

    fn lie(arity: usize) -> OperadTruncation {
        classical_operad(ClassicalOperad::Lie, arity, q()).unwrap()
    }

    #[test]
    fn free_lie_on_one_generator_pi0() {
        let p = QuasiFreePresentation::new(
            lie(4),
            vec![("x".into(), 0)],
            vec![FormalElement::zero()],
            3,
            2,
        )
        .unwrap();
        let pi0 = p.pi0();
        // free Lie algebra on one even generator: weights (1, 0, 0)
        assert_eq!(pi0.dim(1), 1);
        assert_eq!(pi0.dim(2), 0);
        assert_eq!(pi0.dim(3), 0);
    }

    #[test]
    fn identity_pair_is_acyclic() {
        // x (deg 0), y (deg 1), dy = x: both homologies vanish
        let p = QuasiFreePresentation::new(
            lie(4),
            vec![("x".into(), 0), ("y".into(), 1)],
            vec![
                FormalElement::zero(),
                FormalElement::generator(0, q().one()),
            ],
            3,
            3,
        )
        .unwrap();
        let hq = p.quillen_homology(0..=1).unwrap();
        assert_eq!(hq.dim(0), 0);
        assert_eq!(hq.dim(1), 0);
        assert!(p.pi0().is_zero());
        let full = p.to_chain_complex().unwrap();
        let h = full.homology(0..=2, false).unwrap();
        assert_eq!(h.dim(0), 0);
        assert_eq!(h.dim(1), 0);
    }

    #[test]
    fn free_generator_quillen_homology() {
        // free algebra on one degree-2 generator: H^Q = k in degree 2 only
        let p = QuasiFreePresentation::new(
            lie(3),
            vec![("x".into(), 2)],
            vec![FormalElement::zero()],
            2,
            6,
        )
        .unwrap();
        let hq = p.quillen_homology(0..=2).unwrap();
        assert_eq!(hq.dim(0), 0);
        assert_eq!(hq.dim(1), 0);
        assert_eq!(hq.dim(2), 1);
    }

    #[test]
    fn d_squared_violation_rejected() {
        // x (deg 0), y (deg 1) with dy = x, z (deg 2) with dz = y:
        // then d(dz) = x != 0
        let err = QuasiFreePresentation::new(
            lie(3),
            vec![("x".into(), 0), ("y".into(), 1), ("z".into(), 2)],
            vec![
                FormalElement::zero(),
                FormalElement::generator(0, q().one()),
                FormalElement::generator(1, q().one()),
            ],
            2,
            3,
        );
        assert!(matches!(err, Err(PlusError::DifferentialSquare { .. })));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let err = QuasiFreePresentation::new(
            lie(3),
            vec![("x".into(), 0), ("y".into(), 2)],
            vec![
                FormalElement::zero(),
                FormalElement::generator(0, q().one()),
            ],
            2,
            3,
        );
        assert!(matches!(err, Err(PlusError::DifferentialDegree { .. })));
    }

    #[test]
    fn negative_degree_rejected() {
        let err = QuasiFreePresentation::new(
            lie(3),
            vec![("x".into(), -1)],
            vec![FormalElement::zero()],
            2,
            3,
        );
        assert!(matches!(err, Err(PlusError::NegativeDegree { .. })));
    }

    #[test]
    fn bracket_differential_squares_to_zero() {
        // x, y deg 0; z deg 1 with dz = [x, y]: valid
        let p = QuasiFreePresentation::new(
            lie(4),
            vec![("x".into(), 0), ("y".into(), 0), ("z".into(), 1)],
            vec![
                FormalElement::zero(),
                FormalElement::zero(),
                FormalElement::term(q().one(), 2, 0, vec![0, 1]),
            ],
            3,
            2,
        )
        .unwrap();
        // pi0 = free Lie on x,y modulo the ideal generated by [x,y]
        let pi0 = p.pi0();
        assert_eq!(pi0.dim(1), 2);
        assert_eq!(pi0.dim(2), 0);
        // weight 3: free Lie has dim 2; the ideal kills [[x,y],x] and [[x,y],y]
        assert_eq!(pi0.dim(3), 0);
    }
}
