//! Finite-dimensional discrete algebras given by structure constants:
//! associative, Lie and Leibniz, with ideals, quotients, decomposables,
//! perfect radicals, derivations, square-zero extensions and universal
//! central extensions of perfect algebras.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exact_linalg::{
    decompose, quotient_basis, rank, LinalgError, Scalar, ScalarDomain, SparseMatrix, SparseVec,
    SubspaceBasis,
};
use crate::par;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("kind identity fails on basis triple ({0}, {1}, {2})")]
    KindViolation(usize, usize, usize),
    #[error("bracket is not antisymmetric on basis pair ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("subspace is not an ideal (violated by basis pair {0}, {1})")]
    NotAnIdeal(usize, usize),
    #[error("subspace is not closed under the product (pair {0}, {1})")]
    NotClosed(usize, usize),
    #[error("map is not an algebra morphism on basis pair ({0}, {1})")]
    NotAMorphism(usize, usize),
    #[error("module axioms fail on basis pair ({0}, {1})")]
    NotAModule(usize, usize),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("algebra is not perfect (radical has dimension {0})")]
    NotPerfect(usize),
    #[error("algebra kinds do not match: {0:?} vs {1:?}")]
    KindMismatch(AlgebraKind, AlgebraKind),
    #[error("algebra is not unital")]
    NotUnital,
    #[error("operation requires an associative algebra")]
    NotAssociative,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The species of algebra a structure-constant tensor encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Associative,
    Lie,
    Leibniz,
}

impl AlgebraKind {
    pub fn name(&self) -> &'static str {
        match self {
            AlgebraKind::Associative => "associative",
            AlgebraKind::Lie => "lie",
            AlgebraKind::Leibniz => "leibniz",
        }
    }
}

/// A finite-dimensional algebra with a fixed ordered basis and product
/// tensor. The kind identity is checked on all basis triples at
/// construction.
#[derive(Clone, Debug)]
pub struct StructureConstantAlgebra {
    kind: AlgebraKind,
    domain: ScalarDomain,
    labels: Vec<String>,
    /// (i, j) -> product of basis elements i and j; absent entries are zero.
    products: BTreeMap<(usize, usize), SparseVec>,
}

impl StructureConstantAlgebra {
    pub fn new(
        kind: AlgebraKind,
        domain: ScalarDomain,
        labels: Vec<String>,
        products: BTreeMap<(usize, usize), SparseVec>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        for ((i, j), v) in &products {
            if *i >= dim || *j >= dim {
                return Err(LinalgError::IndexOutOfRange {
                    index: (*i).max(*j),
                    dim,
                }
                .into());
            }
            if v.dim() != dim {
                return Err(LinalgError::ShapeMismatch {
                    left: (dim, 1),
                    right: (v.dim(), 1),
                }
                .into());
            }
        }
        let mut products = products;
        products.retain(|_, v| !v.is_zero());
        let algebra = StructureConstantAlgebra {
            kind,
            domain,
            labels,
            products,
        };
        algebra.validate()?;
        Ok(algebra)
    }

    pub fn abelian(kind: AlgebraKind, domain: ScalarDomain, dim: usize) -> Self {
        let labels = (0..dim).map(|i| format!("x{i}")).collect();
        StructureConstantAlgebra {
            kind,
            domain,
            labels,
            products: BTreeMap::new(),
        }
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        if self.kind == AlgebraKind::Lie {
            for i in 0..n {
                if !self.basis_product(i, i).is_zero() {
                    return Err(AlgebraError::NotAntisymmetric(i, i));
                }
                for j in 0..n {
                    let anti = self.basis_product(i, j).add(&self.basis_product(j, i));
                    if !anti.is_zero() {
                        return Err(AlgebraError::NotAntisymmetric(i, j));
                    }
                }
            }
        }
        let violation = par::find_first(n * n * n, |idx| {
            let (i, rest) = (idx / (n * n), idx % (n * n));
            let (j, k) = (rest / n, rest % n);
            let holds = match self.kind {
                AlgebraKind::Associative => {
                    // (e_i e_j) e_k = e_i (e_j e_k)
                    let left = self.product_basis_right(&self.basis_product(i, j), k);
                    let right = self.product_basis_left(i, &self.basis_product(j, k));
                    left == right
                }
                AlgebraKind::Lie => {
                    // [[i,j],k] + [[j,k],i] + [[k,i],j] = 0
                    let a = self.product_basis_right(&self.basis_product(i, j), k);
                    let b = self.product_basis_right(&self.basis_product(j, k), i);
                    let c = self.product_basis_right(&self.basis_product(k, i), j);
                    a.add(&b).add(&c).is_zero()
                }
                AlgebraKind::Leibniz => {
                    // [i,[j,k]] = [[i,j],k] - [[i,k],j]
                    let lhs = self.product_basis_left(i, &self.basis_product(j, k));
                    let r1 = self.product_basis_right(&self.basis_product(i, j), k);
                    let r2 = self.product_basis_right(&self.basis_product(i, k), j);
                    lhs == r1.axpy(&-self.domain.one(), &r2)
                }
            };
            if holds {
                None
            } else {
                Some((i, j, k))
            }
        });
        match violation {
            Some((i, j, k)) => Err(AlgebraError::KindViolation(i, j, k)),
            None => Ok(()),
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn unit_vec(&self, i: usize) -> SparseVec {
        SparseVec::unit(self.dim(), i, self.domain.one())
    }

    /// Product (or bracket) of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> SparseVec {
        self.products
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| SparseVec::zero(self.dim()))
    }

    /// Bilinear extension of the product tensor.
    pub fn product(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero(self.dim());
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                if let Some(p) = self.products.get(&(*i, *j)) {
                    let c = a.clone() * b.clone();
                    acc = acc.axpy(&c, p);
                }
            }
        }
        acc
    }

    /// `product(x, e_k)` without materializing the unit vector.
    fn product_basis_right(&self, x: &SparseVec, k: usize) -> SparseVec {
        let mut acc = SparseVec::zero(self.dim());
        for (i, a) in x.entries() {
            if let Some(p) = self.products.get(&(*i, k)) {
                acc = acc.axpy(a, p);
            }
        }
        acc
    }

    /// `product(e_k, x)` without materializing the unit vector.
    fn product_basis_left(&self, k: usize, x: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero(self.dim());
        for (j, b) in x.entries() {
            if let Some(p) = self.products.get(&(k, *j)) {
                acc = acc.axpy(b, p);
            }
        }
        acc
    }

    /// Reinterprets a Lie algebra as a Leibniz algebra (any Lie bracket
    /// satisfies the Leibniz identity); other casts revalidate.
    pub fn as_kind(&self, kind: AlgebraKind) -> Result<StructureConstantAlgebra, AlgebraError> {
        StructureConstantAlgebra::new(
            kind,
            self.domain,
            self.labels.clone(),
            self.products.clone(),
        )
    }

    /// The unit element of an associative algebra, if one exists: solves
    /// `u·e_i = e_i·u = e_i` for all i.
    pub fn unit(&self) -> Option<SparseVec> {
        if self.kind != AlgebraKind::Associative {
            return None;
        }
        let n = self.dim();
        // unknown u: rows stack u*e_i - e_i and e_i*u - e_i over all i
        let mut triplets = Vec::new();
        let mut rhs_entries = Vec::new();
        for i in 0..n {
            for k in 0..n {
                // (u e_i)_row = sum_j u_j (e_j e_i)_row
                if let Some(p) = self.products.get(&(k, i)) {
                    for (row, v) in p.entries() {
                        triplets.push((i * n + row, k, v.clone()));
                    }
                }
                if let Some(p) = self.products.get(&(i, k)) {
                    for (row, v) in p.entries() {
                        triplets.push((n * n + i * n + row, k, v.clone()));
                    }
                }
            }
            rhs_entries.push((i * n + i, self.domain.one()));
            rhs_entries.push((n * n + i * n + i, self.domain.one()));
        }
        let m = SparseMatrix::from_triplets(2 * n * n, n, self.domain, triplets).ok()?;
        let b = SparseVec::from_entries(2 * n * n, rhs_entries).ok()?;
        decompose(&m).solver.solve(&b)
    }

    pub fn is_unital(&self) -> bool {
        self.unit().is_some()
    }

    /// Direct sum of algebras of the same kind (the product ring when
    /// associative).
    pub fn direct_sum(&self, other: &StructureConstantAlgebra) -> Result<Self, AlgebraError> {
        if self.kind != other.kind {
            return Err(AlgebraError::KindMismatch(self.kind, other.kind));
        }
        let (n, m) = (self.dim(), other.dim());
        let labels = self
            .labels
            .iter()
            .map(|l| format!("l.{l}"))
            .chain(other.labels.iter().map(|l| format!("r.{l}")))
            .collect();
        let mut products = BTreeMap::new();
        for ((i, j), v) in &self.products {
            let shifted =
                SparseVec::from_entries(n + m, v.entries().iter().cloned()).expect("valid");
            products.insert((*i, *j), shifted);
        }
        for ((i, j), v) in &other.products {
            let shifted =
                SparseVec::from_entries(n + m, v.entries().iter().map(|(k, s)| (k + n, s.clone())))
                    .expect("valid");
            products.insert((i + n, j + n), shifted);
        }
        StructureConstantAlgebra::new(self.kind, self.domain, labels, products)
    }

    /// The subalgebra spanned by the given independent vectors, which must
    /// be closed under the product.
    pub fn subalgebra(
        &self,
        basis: &SubspaceBasis,
    ) -> Result<StructureConstantAlgebra, AlgebraError> {
        let mat = basis.as_matrix(self.domain);
        let solver = decompose(&mat).solver;
        let mut products = BTreeMap::new();
        for p in 0..basis.dim() {
            for q in 0..basis.dim() {
                let prod = self.product(&basis.vectors()[p], &basis.vectors()[q]);
                if prod.is_zero() {
                    continue;
                }
                let coords = solver.solve(&prod).ok_or(AlgebraError::NotClosed(p, q))?;
                products.insert((p, q), coords);
            }
        }
        let labels = (0..basis.dim()).map(|i| format!("s{i}")).collect();
        StructureConstantAlgebra::new(self.kind, self.domain, labels, products)
    }
}

/// An ideal of a structure-constant algebra, stored by a basis of the
/// underlying subspace and validated for closure under multiplication by
/// the whole algebra on both sides.
#[derive(Clone, Debug)]
pub struct Ideal {
    basis: SubspaceBasis,
}

impl Ideal {
    pub fn new(
        algebra: &StructureConstantAlgebra,
        basis: SubspaceBasis,
    ) -> Result<Self, AlgebraError> {
        let mat = basis.as_matrix(algebra.domain());
        let solver = decompose(&mat).solver;
        for (vi, v) in basis.vectors().iter().enumerate() {
            for i in 0..algebra.dim() {
                let left = algebra.product(&algebra.unit_vec(i), v);
                let right = algebra.product(v, &algebra.unit_vec(i));
                if !left.is_zero() && solver.solve(&left).is_none() {
                    return Err(AlgebraError::NotAnIdeal(i, vi));
                }
                if !right.is_zero() && solver.solve(&right).is_none() {
                    return Err(AlgebraError::NotAnIdeal(vi, i));
                }
            }
        }
        Ok(Ideal { basis })
    }

    pub fn zero(algebra: &StructureConstantAlgebra) -> Self {
        Ideal {
            basis: SubspaceBasis::empty(algebra.dim()),
        }
    }

    pub fn whole(algebra: &StructureConstantAlgebra) -> Self {
        let vectors = (0..algebra.dim())
            .map(|i| SparseVec::unit(algebra.dim(), i, algebra.domain().one()))
            .collect();
        Ideal {
            basis: SubspaceBasis::new_unchecked(algebra.dim(), vectors),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }
}

/// Deterministic basis for the span of a set of vectors: the pivot columns
/// of the stacked matrix.
pub fn span_basis(ambient: usize, vectors: &[SparseVec], domain: ScalarDomain) -> SubspaceBasis {
    if vectors.is_empty() {
        return SubspaceBasis::empty(ambient);
    }
    let stack = SparseMatrix::from_columns(ambient, domain, vectors);
    decompose(&stack).image
}

/// The ideal spanned by all binary products of elements of `i`.
///
/// All kinds implemented here are generated in arity 2, so binary products
/// span the image of every higher evaluation product restricted to `i`.
pub fn square_ideal(
    algebra: &StructureConstantAlgebra,
    ideal: &Ideal,
) -> Result<Ideal, AlgebraError> {
    let mut products = Vec::new();
    for u in ideal.basis.vectors() {
        for v in ideal.basis.vectors() {
            let p = algebra.product(u, v);
            if !p.is_zero() {
                products.push(p);
            }
        }
    }
    let basis = span_basis(algebra.dim(), &products, algebra.domain());
    Ideal::new(algebra, basis)
}

/// The perfect radical: the stable value of A ⊇ A² ⊇ (A²)² ⊇ …, which in
/// finite dimension is reached after at most `dim` steps and satisfies
/// P² = P.
pub fn perfect_radical(algebra: &StructureConstantAlgebra) -> Result<Ideal, AlgebraError> {
    let mut current = Ideal::whole(algebra);
    for _ in 0..=algebra.dim() {
        let next = square_ideal(algebra, &current)?;
        if next.dim() == current.dim() {
            return Ok(next);
        }
        current = next;
    }
    Ok(current)
}

/// The space of indecomposables QA = A/A².
pub struct Indecomposables {
    pub dim: usize,
    pub projection: SparseMatrix,
}

pub fn indecomposables(
    algebra: &StructureConstantAlgebra,
) -> Result<Indecomposables, AlgebraError> {
    let whole = Ideal::whole(algebra);
    let square = square_ideal(algebra, &whole)?;
    let quo = quotient_basis(algebra.dim(), square.basis(), algebra.domain());
    Ok(Indecomposables {
        dim: quo.dim,
        projection: quo.projection,
    })
}

/// Quotient algebra A/i with the induced product, together with the
/// canonical surjection.
pub fn quotient(
    algebra: &StructureConstantAlgebra,
    ideal: &Ideal,
) -> Result<(StructureConstantAlgebra, AlgebraMorphism), AlgebraError> {
    let quo = quotient_basis(algebra.dim(), ideal.basis(), algebra.domain());
    let mut products = BTreeMap::new();
    for p in 0..quo.dim {
        for q in 0..quo.dim {
            let rep_p = quo.section.column(p);
            let rep_q = quo.section.column(q);
            let prod = algebra.product(&rep_p, &rep_q);
            if prod.is_zero() {
                continue;
            }
            let v = quo.projection.mat_vec(&prod);
            if !v.is_zero() {
                products.insert((p, q), v);
            }
        }
    }
    let labels = (0..quo.dim).map(|i| format!("q{i}")).collect();
    let quotient_algebra =
        StructureConstantAlgebra::new(algebra.kind(), algebra.domain(), labels, products)?;
    let surjection =
        AlgebraMorphism::new(algebra.clone(), quotient_algebra.clone(), quo.projection)?;
    Ok((quotient_algebra, surjection))
}

/// A kind- and product-preserving linear map between algebras.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub source: StructureConstantAlgebra,
    pub target: StructureConstantAlgebra,
    pub matrix: SparseMatrix,
}

impl AlgebraMorphism {
    pub fn new(
        source: StructureConstantAlgebra,
        target: StructureConstantAlgebra,
        matrix: SparseMatrix,
    ) -> Result<Self, AlgebraError> {
        if source.kind() != target.kind() {
            return Err(AlgebraError::KindMismatch(source.kind(), target.kind()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(LinalgError::ShapeMismatch {
                left: (target.dim(), source.dim()),
                right: (matrix.rows(), matrix.cols()),
            }
            .into());
        }
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = matrix.mat_vec(&source.basis_product(i, j));
                let fi = matrix.mat_vec(&source.unit_vec(i));
                let fj = matrix.mat_vec(&source.unit_vec(j));
                if lhs != target.product(&fi, &fj) {
                    return Err(AlgebraError::NotAMorphism(i, j));
                }
            }
        }
        Ok(AlgebraMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn is_surjective(&self) -> bool {
        rank(&self.matrix) == self.target.dim()
    }

    pub fn identity(algebra: &StructureConstantAlgebra) -> Self {
        AlgebraMorphism {
            source: algebra.clone(),
            target: algebra.clone(),
            matrix: SparseMatrix::identity(algebra.dim(), algebra.domain()),
        }
    }
}

/// The kernel of a morphism, as an ideal of the source.
pub fn kernel_of(f: &AlgebraMorphism) -> Result<Ideal, AlgebraError> {
    let kernel = decompose(&f.matrix).kernel;
    Ideal::new(&f.source, kernel)
}

/// Left and right action matrices of a module over an algebra, indexed by
/// the algebra basis. For Lie modules the right action is forced to be the
/// negative of the left one.
#[derive(Clone, Debug)]
pub struct ModuleData {
    pub left: Vec<SparseMatrix>,
    pub right: Vec<SparseMatrix>,
    pub dim: usize,
}

impl ModuleData {
    pub fn trivial(algebra: &StructureConstantAlgebra, module_dim: usize) -> Self {
        let zero = SparseMatrix::zero(module_dim, module_dim, algebra.domain());
        ModuleData {
            left: vec![zero.clone(); algebra.dim()],
            right: vec![zero; algebra.dim()],
            dim: module_dim,
        }
    }

    /// Lie module from a left action; the right action is -left.
    pub fn lie_from_left(left: Vec<SparseMatrix>) -> Self {
        let dim = left.first().map_or(0, |m| m.rows());
        let minus_one = left
            .first()
            .map(|m| -m.domain().one())
            .unwrap_or(-ScalarDomain::Rational.one());
        let right = left.iter().map(|m| m.scale(&minus_one)).collect();
        ModuleData { left, right, dim }
    }

    /// The adjoint module of a Lie algebra.
    pub fn adjoint(algebra: &StructureConstantAlgebra) -> Self {
        let n = algebra.dim();
        let left = (0..n)
            .map(|i| {
                let mut triplets = Vec::new();
                for j in 0..n {
                    for (k, v) in algebra.basis_product(i, j).entries() {
                        triplets.push((*k, j, v.clone()));
                    }
                }
                SparseMatrix::from_triplets(n, n, algebra.domain(), triplets).expect("valid")
            })
            .collect();
        ModuleData::lie_from_left(left)
    }

    fn action_of(&self, actions: &[SparseMatrix], v: &SparseVec) -> SparseMatrix {
        let mut acc = SparseMatrix::zero(self.dim, self.dim, actions[0].domain());
        for (i, c) in v.entries() {
            acc = acc.add(&actions[*i].scale(c)).expect("shapes match");
        }
        acc
    }

    /// Checks the module axioms of the given kind on all basis pairs.
    pub fn validate(&self, algebra: &StructureConstantAlgebra) -> Result<(), AlgebraError> {
        let n = algebra.dim();
        if self.left.len() != n || self.right.len() != n {
            return Err(LinalgError::ShapeMismatch {
                left: (n, n),
                right: (self.left.len(), self.right.len()),
            }
            .into());
        }
        let fail = |i, j| Err(AlgebraError::NotAModule(i, j));
        for i in 0..n {
            for j in 0..n {
                let lam_ij = self.action_of(&self.left, &algebra.basis_product(i, j));
                let rho_ij = self.action_of(&self.right, &algebra.basis_product(i, j));
                let li = &self.left[i];
                let lj = &self.left[j];
                let ri = &self.right[i];
                let rj = &self.right[j];
                match algebra.kind() {
                    AlgebraKind::Lie => {
                        // λ_[i,j] = λ_i λ_j − λ_j λ_i, ρ = −λ
                        let comm = li
                            .mat_mul(lj)
                            .unwrap()
                            .add(&lj.mat_mul(li).unwrap().scale(&-algebra.domain().one()))
                            .unwrap();
                        if lam_ij != comm {
                            return fail(i, j);
                        }
                        let neg = li.scale(&-algebra.domain().one());
                        if *ri != neg {
                            return fail(i, j);
                        }
                    }
                    AlgebraKind::Associative => {
                        // λ_{ij} = λ_i λ_j, ρ_{ij} = ρ_j ρ_i, λ_i ρ_j = ρ_j λ_i
                        if lam_ij != li.mat_mul(lj).unwrap() {
                            return fail(i, j);
                        }
                        if rho_ij != rj.mat_mul(ri).unwrap() {
                            return fail(i, j);
                        }
                        if li.mat_mul(rj).unwrap() != rj.mat_mul(li).unwrap() {
                            return fail(i, j);
                        }
                    }
                    AlgebraKind::Leibniz => {
                        // Loday-Pirashvili axioms:
                        // ρ_[i,j] = ρ_j ρ_i − ρ_i ρ_j
                        // λ_i ρ_j = ρ_j λ_i − λ_[i,j]
                        // λ_i λ_j = λ_[i,j] − ρ_j λ_i
                        let m1 = rj.mat_mul(ri).unwrap();
                        let m2 = ri.mat_mul(rj).unwrap();
                        if rho_ij != m1.add(&m2.scale(&-algebra.domain().one())).unwrap() {
                            return fail(i, j);
                        }
                        let lirj = li.mat_mul(rj).unwrap();
                        let rjli = rj.mat_mul(li).unwrap();
                        if lirj != rjli.add(&lam_ij.scale(&-algebra.domain().one())).unwrap() {
                            return fail(i, j);
                        }
                        let lilj = li.mat_mul(lj).unwrap();
                        if lilj != lam_ij.add(&rjli.scale(&-algebra.domain().one())).unwrap() {
                            return fail(i, j);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Basis of the space of derivations D: A -> M, i.e. linear maps with
/// D(e_i e_j) = ρ_j(D e_i) + λ_i(D e_j) on all basis pairs.
pub fn derivations(
    algebra: &StructureConstantAlgebra,
    module: &ModuleData,
) -> Result<SubspaceBasis, AlgebraError> {
    module.validate(algebra)?;
    let n = algebra.dim();
    let m = module.dim;
    // unknowns: D(e_i)_p at index i*m + p
    let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut row = 0usize;
    for i in 0..n {
        for j in 0..n {
            // rows (i,j,p): sum_k c^k_ij D(e_k)_p − (ρ_j D_i)_p − (λ_i D_j)_p = 0
            for (k, c) in algebra.basis_product(i, j).entries() {
                for p in 0..m {
                    triplets.push((row + p, k * m + p, c.clone()));
                }
            }
            for (r, c2, v) in module.right[j].iter() {
                triplets.push((row + r, i * m + c2, -v.clone()));
            }
            for (r, c2, v) in module.left[i].iter() {
                triplets.push((row + r, j * m + c2, -v.clone()));
            }
            row += m;
        }
    }
    let system = SparseMatrix::from_triplets(row, n * m, algebra.domain(), triplets)?;
    Ok(decompose(&system).kernel)
}

/// Result of the square-zero test on a surjection.
pub struct SquareZeroReport {
    pub is_square_zero: bool,
    pub kernel: Ideal,
}

/// Checks whether a surjective morphism is a square-zero extension: all
/// products of two kernel elements must vanish.
pub fn square_zero_check(f: &AlgebraMorphism) -> Result<SquareZeroReport, AlgebraError> {
    if !f.is_surjective() {
        return Err(AlgebraError::NotSurjective);
    }
    let kernel = kernel_of(f)?;
    let mut is_square_zero = true;
    'outer: for u in kernel.basis().vectors() {
        for v in kernel.basis().vectors() {
            if !f.source.product(u, v).is_zero() {
                is_square_zero = false;
                break 'outer;
            }
        }
    }
    Ok(SquareZeroReport {
        is_square_zero,
        kernel,
    })
}

/// A universal central (square-zero) extension of a perfect algebra.
pub struct CentralExtension {
    pub algebra: StructureConstantAlgebra,
    pub map: AlgebraMorphism,
    pub kernel_dim: usize,
}

/// Universal central extension of a perfect Lie or Leibniz algebra.
///
/// For a Lie algebra the carrier is Λ²g modulo the image of the degree-3
/// Chevalley-Eilenberg boundary, with bracket `[x∧y, z∧w] = [x,y]∧[z,w]`
/// and structure map `x∧y ↦ [x,y]`; for a Leibniz algebra the same with
/// g⊗g and the Loday boundary. The kernel dimension equals dim H₂ of `g`
/// in the matching classical theory.
pub fn uce(
    g: &StructureConstantAlgebra,
    kind: AlgebraKind,
) -> Result<CentralExtension, AlgebraError> {
    if g.kind() != kind {
        return Err(AlgebraError::KindMismatch(g.kind(), kind));
    }
    let radical = perfect_radical(g)?;
    if radical.dim() != g.dim() {
        return Err(AlgebraError::NotPerfect(radical.dim()));
    }
    let n = g.dim();
    let domain = g.domain();

    // ambient pairing space and boundary image depend on the kind
    let (ambient_dim, pair_index): (usize, Box<dyn Fn(usize, usize) -> Option<(usize, bool)>>) =
        match kind {
            AlgebraKind::Lie => {
                // wedge basis (i<j) at index w(i,j); (j,i) flips sign
                let idx = move |i: usize, j: usize| -> Option<(usize, bool)> {
                    use std::cmp::Ordering::*;
                    match i.cmp(&j) {
                        Less => Some((wedge_index(i, j, n), false)),
                        Greater => Some((wedge_index(j, i, n), true)),
                        Equal => None,
                    }
                };
                (n * (n - 1) / 2, Box::new(idx))
            }
            AlgebraKind::Leibniz => {
                let idx =
                    move |i: usize, j: usize| -> Option<(usize, bool)> { Some((i * n + j, false)) };
                (n * n, Box::new(idx))
            }
            AlgebraKind::Associative => return Err(AlgebraError::KindMismatch(kind, kind)),
        };

    // pairing of two algebra vectors into the ambient space
    let pair_vec = |x: &SparseVec, y: &SparseVec| -> SparseVec {
        let mut entries = Vec::new();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                if let Some((w, flip)) = pair_index(*i, *j) {
                    let c = a.clone() * b.clone();
                    entries.push((w, if flip { -c } else { c }));
                }
            }
        }
        SparseVec::from_entries(ambient_dim, entries).expect("pairing entries valid")
    };

    // boundary image: columns of d3 for the matching complex
    let d3_columns: Vec<SparseVec> = match kind {
        AlgebraKind::Lie => {
            // d(x∧y∧z) = [x,y]∧z − [x,z]∧y + [y,z]∧x
            let mut cols = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in (j + 1)..n {
                        let mut col = SparseVec::zero(ambient_dim);
                        let terms = [
                            (g.basis_product(i, j), k, false),
                            (g.basis_product(i, k), j, true),
                            (g.basis_product(j, k), i, false),
                        ];
                        for (bracket, rest, negate) in terms {
                            let rest_vec = SparseVec::unit(n, rest, domain.one());
                            let mut w = pair_vec(&bracket, &rest_vec);
                            if negate {
                                w = w.scale(&-domain.one());
                            }
                            col = col.add(&w);
                        }
                        if !col.is_zero() {
                            cols.push(col);
                        }
                    }
                }
            }
            cols
        }
        AlgebraKind::Leibniz => {
            // d(x⊗y⊗z) = [x,y]⊗z − [x,z]⊗y − x⊗[y,z]
            let mut cols = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let ei = SparseVec::unit(n, i, domain.one());
                        let ej = SparseVec::unit(n, j, domain.one());
                        let ek = SparseVec::unit(n, k, domain.one());
                        let mut col = pair_vec(&g.basis_product(i, j), &ek);
                        col = col.axpy(&-domain.one(), &pair_vec(&g.basis_product(i, k), &ej));
                        col = col.axpy(&-domain.one(), &pair_vec(&ei, &g.basis_product(j, k)));
                        if !col.is_zero() {
                            cols.push(col);
                        }
                    }
                }
            }
            cols
        }
        AlgebraKind::Associative => unreachable!(),
    };

    let boundary = span_basis(ambient_dim, &d3_columns, domain);
    let quo = quotient_basis(ambient_dim, &boundary, domain);

    // structure map on carrier coordinates: class of pairing ↦ bracket
    let mut p_triplets = Vec::new();
    for e in 0..quo.dim {
        let rep = quo.section.column(e);
        // d2 of the representative: sum over pairing coordinates
        let mut img = SparseVec::zero(n);
        for (w, c) in rep.entries() {
            let (i, j) = match kind {
                AlgebraKind::Lie => wedge_unindex(*w, n),
                AlgebraKind::Leibniz => (*w / n, *w % n),
                AlgebraKind::Associative => unreachable!(),
            };
            img = img.axpy(c, &g.basis_product(i, j));
        }
        for (r, v) in img.entries() {
            p_triplets.push((*r, e, v.clone()));
        }
    }
    let p_matrix = SparseMatrix::from_triplets(n, quo.dim, domain, p_triplets)?;
    if rank(&p_matrix) != n {
        // cannot happen for perfect g: [g,g] = g
        return Err(AlgebraError::NotSurjective);
    }

    // bracket on the carrier: [u, v] = class of pairing(p(u), p(v))
    let mut products = BTreeMap::new();
    for a in 0..quo.dim {
        for b in 0..quo.dim {
            let pa = p_matrix.column(a);
            let pb = p_matrix.column(b);
            let w = pair_vec(&pa, &pb);
            let v = quo.projection.mat_vec(&w);
            if !v.is_zero() {
                products.insert((a, b), v);
            }
        }
    }
    let labels = (0..quo.dim).map(|i| format!("u{i}")).collect();
    let extension = StructureConstantAlgebra::new(kind, domain, labels, products)?;
    let map = AlgebraMorphism::new(extension.clone(), g.clone(), p_matrix)?;
    Ok(CentralExtension {
        algebra: extension,
        map,
        kernel_dim: quo.dim - n,
    })
}

fn wedge_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j && j < n);
    // pairs (i, j) with i<j in lexicographic order
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn wedge_unindex(mut w: usize, n: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - i - 1;
        if w < row {
            return (i, i + 1 + w);
        }
        w -= row;
    }
    unreachable!("wedge index in range")
}


#[cfg(test)]
mod tests {
    use super::tests_support::{sl2, two_dim_solvable};
    use super::*;

    fn q() -> ScalarDomain {
        ScalarDomain::Rational
    }

    #[test]
    fn jacobi_violation_rejected() {
        // [x,y]=z, [x,z]=x: the Jacobi sum on (x,y,z) is -z, nonzero
        let mut products = BTreeMap::new();
        let unit = |i| SparseVec::unit(3, i, q().one());
        for (a, b, t) in [(0usize, 1usize, 2usize), (0, 2, 0)] {
            products.insert((a, b), unit(t));
            products.insert((b, a), unit(t).scale(&-q().one()));
        }
        let err = StructureConstantAlgebra::new(
            AlgebraKind::Lie,
            q(),
            vec!["x".into(), "y".into(), "z".into()],
            products,
        );
        assert!(matches!(err, Err(AlgebraError::KindViolation(..))));
    }

    #[test]
    fn leibniz_non_lie_example() {
        // [x,x] = y and all else zero is Leibniz but not Lie
        let mut products = BTreeMap::new();
        products.insert((0, 0), SparseVec::unit(2, 1, q().one()));
        let a = StructureConstantAlgebra::new(
            AlgebraKind::Leibniz,
            q(),
            vec!["x".into(), "y".into()],
            products.clone(),
        );
        assert!(a.is_ok());
        let as_lie = StructureConstantAlgebra::new(
            AlgebraKind::Lie,
            q(),
            vec!["x".into(), "y".into()],
            products,
        );
        assert!(as_lie.is_err());
    }

    #[test]
    fn square_ideal_examples() {
        // abelian: square of whole is zero
        let ab = StructureConstantAlgebra::abelian(AlgebraKind::Lie, q(), 3);
        let sq = square_ideal(&ab, &Ideal::whole(&ab)).unwrap();
        assert_eq!(sq.dim(), 0);
        // [x,y]=y: square is span{y}
        let s = two_dim_solvable();
        let sq = square_ideal(&s, &Ideal::whole(&s)).unwrap();
        assert_eq!(sq.dim(), 1);
        assert!(sq.basis().vectors()[0].get(1).is_some());
    }

    #[test]
    fn perfect_radical_examples() {
        let ab = StructureConstantAlgebra::abelian(AlgebraKind::Lie, q(), 2);
        assert_eq!(perfect_radical(&ab).unwrap().dim(), 0);
        let s = sl2();
        assert_eq!(perfect_radical(&s).unwrap().dim(), 3);
        let solvable = two_dim_solvable();
        assert_eq!(perfect_radical(&solvable).unwrap().dim(), 0);
    }

    #[test]
    fn indecomposables_examples() {
        let ab = StructureConstantAlgebra::abelian(AlgebraKind::Lie, q(), 4);
        assert_eq!(indecomposables(&ab).unwrap().dim, 4);
        assert_eq!(indecomposables(&sl2()).unwrap().dim, 0);
        assert_eq!(indecomposables(&two_dim_solvable()).unwrap().dim, 1);
    }

    #[test]
    fn quotient_examples() {
        let s = sl2();
        let (same, _) = quotient(&s, &Ideal::zero(&s)).unwrap();
        assert_eq!(same.dim(), 3);
        let (zero, _) = quotient(&s, &Ideal::whole(&s)).unwrap();
        assert_eq!(zero.dim(), 0);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let s = sl2();
        let id = AlgebraMorphism::identity(&s);
        assert_eq!(kernel_of(&id).unwrap().dim(), 0);
        let zero_target = StructureConstantAlgebra::abelian(AlgebraKind::Lie, q(), 0);
        let zmat = SparseMatrix::zero(0, 3, q());
        let zmor = AlgebraMorphism::new(s.clone(), zero_target, zmat).unwrap();
        assert_eq!(kernel_of(&zmor).unwrap().dim(), 3);
    }

    #[test]
    fn derivations_examples() {
        // abelian with trivial coefficients: every linear map derives
        let ab = StructureConstantAlgebra::abelian(AlgebraKind::Lie, q(), 2);
        let m = ModuleData::trivial(&ab, 1);
        assert_eq!(derivations(&ab, &m).unwrap().dim(), 2);
        // sl2 trivial coefficients: none (sl2 is perfect)
        let s = sl2();
        let m = ModuleData::trivial(&s, 1);
        assert_eq!(derivations(&s, &m).unwrap().dim(), 0);
        // [x,y]=y trivial coefficients: maps vanishing on y
        let solvable = two_dim_solvable();
        let m = ModuleData::trivial(&solvable, 1);
        let ders = derivations(&solvable, &m).unwrap();
        assert_eq!(ders.dim(), 1);
        // the derivation kills y (coordinate 1)
        assert!(ders.vectors()[0].get(1).is_none());
    }

    #[test]
    fn adjoint_module_validates() {
        let s = sl2();
        let adj = ModuleData::adjoint(&s);
        assert!(adj.validate(&s).is_ok());
        // inner derivations of sl2 = sl2 itself (3-dimensional), and these
        // are all of them (first Whitehead lemma)
        assert_eq!(derivations(&s, &adj).unwrap().dim(), 3);
    }

    #[test]
    fn square_zero_identity() {
        let s = sl2();
        let report = square_zero_check(&AlgebraMorphism::identity(&s)).unwrap();
        assert!(report.is_square_zero);
        assert_eq!(report.kernel.dim(), 0);
    }

    #[test]
    fn uce_of_sl2_is_sl2() {
        let s = sl2();
        let ext = uce(&s, AlgebraKind::Lie).unwrap();
        assert_eq!(ext.kernel_dim, 0);
        assert_eq!(ext.algebra.dim(), 3);
        assert!(ext.map.is_surjective());
        let report = square_zero_check(&ext.map).unwrap();
        assert!(report.is_square_zero);
    }

    #[test]
    fn uce_rejects_non_perfect() {
        let ab = StructureConstantAlgebra::abelian(AlgebraKind::Lie, q(), 2);
        assert!(matches!(
            uce(&ab, AlgebraKind::Lie),
            Err(AlgebraError::NotPerfect(_))
        ));
    }

    #[test]
    fn perfection_agrees_between_lie_and_leibniz_views() {
        for a in [sl2(), two_dim_solvable()] {
            let as_leib = a.as_kind(AlgebraKind::Leibniz).unwrap();
            let p_lie = perfect_radical(&a).unwrap().dim();
            let p_leib = perfect_radical(&as_leib).unwrap().dim();
            assert_eq!(p_lie, p_leib);
        }
    }

    #[test]
    fn wedge_indexing_roundtrip() {
        let n = 7;
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let w = wedge_index(i, j, n);
                assert_eq!(wedge_unindex(w, n), (i, j));
                seen.insert(w);
            }
        }
        assert_eq!(seen.len(), n * (n - 1) / 2);
        assert_eq!(*seen.iter().max().unwrap(), n * (n - 1) / 2 - 1);
    }
}
