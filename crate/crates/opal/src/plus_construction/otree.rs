//! O-trees and the quasi-free models they generate: the truncated
//! telescope of the direct system U_r, its cone, and the cofiber of a map
//! from a telescope into another presentation.

use std::collections::BTreeMap;

use crate::exact_linalg::Scalar;
use crate::operad_kit::OperadTruncation;

use super::presentation::{FormalElement, Pi0Report, QuasiFreePresentation};
use super::PlusError;

/// An even-level vertex: carries a generator; its children are odd
/// vertices. A childless even vertex is a frontier leaf.
#[derive(Clone, Debug)]
pub struct EvenVertex {
    pub children: Vec<OddVertex>,
}

/// An odd-level vertex: carries a scalar multiple of an operad basis
/// element of arity = number of children (each child an even vertex).
#[derive(Clone, Debug)]
pub struct OddVertex {
    pub coef: Scalar,
    pub label: usize,
    pub children: Vec<EvenVertex>,
}

/// A rooted O-tree: even levels carry generators, odd levels carry
/// degree-0 operad operations of arity ≥ 2.
#[derive(Clone, Debug)]
pub struct OTree {
    pub root: EvenVertex,
}

impl OTree {
    /// Validates the shape and the labels against an operad truncation:
    /// interior even vertices have at least 2 successors, odd vertices have
    /// arity ≥ 2 with in-range degree-0 labels.
    pub fn validate(&self, operad: &OperadTruncation) -> Result<(), PlusError> {
        fn walk_even(v: &EvenVertex, operad: &OperadTruncation) -> Result<(), PlusError> {
            if v.children.len() == 1 {
                return Err(PlusError::BadTree(
                    "even-level vertices need at least 2 successors".into(),
                ));
            }
            for odd in &v.children {
                walk_odd(odd, operad)?;
            }
            Ok(())
        }
        fn walk_odd(v: &OddVertex, operad: &OperadTruncation) -> Result<(), PlusError> {
            let arity = v.children.len();
            if arity < 2 {
                return Err(PlusError::BadTree(
                    "odd-level vertices need arity >= 2".into(),
                ));
            }
            if v.label >= operad.dim(arity) {
                return Err(PlusError::BadTree(format!(
                    "label {} out of range for arity {arity}",
                    v.label
                )));
            }
            if operad.degree_of(arity, v.label) != 0 {
                return Err(PlusError::BadTree(
                    "odd-level labels must have differential degree 0".into(),
                ));
            }
            for even in &v.children {
                walk_even(even, operad)?;
            }
            Ok(())
        }
        walk_even(&self.root, operad)
    }

    /// Depth in half-levels: the largest l such that an even vertex exists
    /// at level 2l.
    pub fn half_depth(&self) -> usize {
        fn depth_even(v: &EvenVertex) -> usize {
            v.children
                .iter()
                .flat_map(|odd| odd.children.iter().map(depth_even))
                .max()
                .map_or(0, |d| d + 1)
        }
        depth_even(&self.root)
    }
}

/// The telescope presentation of an O-tree truncated at stage r_max,
/// together with the bookkeeping needed to build cones and cofibers.
pub struct Telescope {
    pub presentation: QuasiFreePresentation,
    /// generator indices of the x's, in breadth-first order.
    pub x_gens: Vec<usize>,
    /// (y generator, paired x generator), for even vertices above the
    /// frontier.
    pub y_gens: Vec<(usize, usize)>,
    /// φ(x) for each paired x generator.
    pub phi: BTreeMap<usize, FormalElement>,
    /// x generators at the frontier level (no y partner).
    pub frontier: Vec<usize>,
    pub r_max: usize,
}

/// Builds the telescope of the direct system U_0 → U_1 → … → U_{r_max}:
/// free on generators x_I (degree 0) for all even vertices of level
/// ≤ 2·r_max and y_I (degree 1) for levels < 2·r_max, with
/// d(y_I) = x_I − φ(x_I).
pub fn otree_telescope(
    operad: &OperadTruncation,
    tree: &OTree,
    r_max: usize,
    weight_max: usize,
    degree_max: i64,
) -> Result<Telescope, PlusError> {
    tree.validate(operad)?;
    if tree.half_depth() < r_max {
        return Err(PlusError::TreeTooShallow {
            depth: tree.half_depth(),
            r_max,
        });
    }

    // breadth-first walk over even vertices down to level 2·r_max
    struct Entry<'t> {
        vertex: &'t EvenVertex,
        level: usize,
        gen: usize,
    }
    let mut gens: Vec<(String, i64)> = Vec::new();
    let mut queue: Vec<Entry> = Vec::new();
    gens.push(("x0".into(), 0));
    queue.push(Entry {
        vertex: &tree.root,
        level: 0,
        gen: 0,
    });
    let mut x_gens = vec![0usize];
    let mut children_of: BTreeMap<usize, Vec<(Scalar, usize, Vec<usize>)>> = BTreeMap::new();
    let mut head = 0usize;
    while head < queue.len() {
        let Entry { vertex, level, gen } = queue[head];
        head += 1;
        if level == r_max {
            continue;
        }
        let mut summands = Vec::new();
        for odd in &vertex.children {
            let mut child_gens = Vec::new();
            for even in &odd.children {
                let id = gens.len();
                gens.push((format!("x{id}"), 0));
                x_gens.push(id);
                child_gens.push(id);
                queue.push(Entry {
                    vertex: even,
                    level: level + 1,
                    gen: id,
                });
            }
            summands.push((odd.coef.clone(), odd.label, child_gens));
        }
        children_of.insert(gen, summands);
    }

    // paired generators and differentials
    let mut phi: BTreeMap<usize, FormalElement> = BTreeMap::new();
    let mut y_gens = Vec::new();
    let mut frontier = Vec::new();
    for &x in &x_gens {
        match children_of.get(&x) {
            Some(summands) => {
                let mut e = FormalElement::zero();
                for (coef, label, args) in summands {
                    e = e.add(FormalElement::term(
                        coef.clone(),
                        args.len(),
                        *label,
                        args.clone(),
                    ));
                }
                phi.insert(x, e);
            }
            None => frontier.push(x),
        }
    }
    let x_count = gens.len();
    let mut differentials: Vec<FormalElement> = vec![FormalElement::zero(); x_count];
    for &x in &x_gens {
        if let Some(phi_x) = phi.get(&x) {
            let y = gens.len();
            gens.push((format!("y{x}"), 1));
            y_gens.push((y, x));
            let one = operad.domain.one();
            let d = FormalElement::generator(x, one.clone()).add(phi_x.clone().scale(&-one));
            differentials.push(d);
        }
    }

    let presentation =
        QuasiFreePresentation::new(operad.clone(), gens, differentials, weight_max, degree_max)?;
    Ok(Telescope {
        presentation,
        x_gens,
        y_gens,
        phi,
        frontier,
        r_max,
    })
}

/// The cone on a telescope: adds x̄_I (degree 1, d x̄_I = x_I) for every
/// x_I and ȳ_I (degree 2) for every y_I with
/// d ȳ_I = y_I − x̄_I + u_I, where u_I is the decomposable element
/// obtained from φ(x_I) by replacing the first argument of each summand
/// with its bar version; then d u_I = φ(x_I) exactly and d² = 0.
pub fn cone_presentation(
    telescope: &Telescope,
    weight_max: usize,
    degree_max: i64,
) -> Result<QuasiFreePresentation, PlusError> {
    let tel = &telescope.presentation;
    let operad = tel.operad().clone();
    let one = operad.domain.one();
    let mut gens: Vec<(String, i64)> = tel
        .algebra
        .generator_names
        .iter()
        .cloned()
        .zip(tel.algebra.generator_degrees.iter().copied())
        .collect();
    let mut differentials = tel.differentials.clone();

    // bar-x generators
    let mut xbar: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in &telescope.x_gens {
        let id = gens.len();
        gens.push((format!("xb{x}"), 1));
        differentials.push(FormalElement::generator(x, one.clone()));
        xbar.insert(x, id);
    }
    // bar-y generators
    for &(y, x) in &telescope.y_gens {
        let id = gens.len();
        gens.push((format!("yb{x}"), 2));
        let phi_x = &telescope.phi[&x];
        let mut u = FormalElement::zero();
        for term in &phi_x.terms {
            let mut args = term.args.clone();
            args[0] = xbar[&term.args[0]];
            u = u.add(FormalElement::term(
                term.coef.clone(),
                term.arity,
                term.op_index,
                args,
            ));
        }
        let d = FormalElement::generator(y, one.clone())
            .add(FormalElement::generator(xbar[&x], -one.clone()))
            .add(u);
        differentials.push(d);
        let _ = id;
    }
    QuasiFreePresentation::new(operad, gens, differentials, weight_max, degree_max)
}

/// A map from a telescope into a presentation: a formal image for every
/// telescope generator, required to commute with the differentials within
/// the truncation.
pub struct TelescopeMap {
    pub images: Vec<FormalElement>,
}

/// The cofiber presentation of a telescope map into `a`: adds x̄_I of
/// degree 1 with d x̄_I = f(x_I), and ȳ_I of degree 2 with
/// d ȳ_I = f(y_I) − x̄_I + u_I where u_I substitutes f into the bar
/// version of φ(x_I).
pub fn cofiber_presentation(
    a: &QuasiFreePresentation,
    telescope: &Telescope,
    f: &TelescopeMap,
    weight_max: usize,
    degree_max: i64,
) -> Result<QuasiFreePresentation, PlusError> {
    let tel = &telescope.presentation;
    let operad = a.operad().clone();
    let one = operad.domain.one();
    if f.images.len() != tel.generator_count() {
        return Err(PlusError::MalformedPresentation(
            "one image per telescope generator required".into(),
        ));
    }
    // images must have the right degree and commute with d
    for (g, img) in f.images.iter().enumerate() {
        let d_tel_g = &tel.differentials[g];
        let lhs = a.expand(&d_tel_g.substitute(&operad, &f.images)?);
        let rhs = a.differential_coords(img);
        if lhs != rhs {
            return Err(PlusError::NotChainMap {
                generator: tel.algebra.generator_names[g].clone(),
            });
        }
    }

    let mut gens: Vec<(String, i64)> = a
        .algebra
        .generator_names
        .iter()
        .cloned()
        .zip(a.algebra.generator_degrees.iter().copied())
        .collect();
    let mut differentials = a.differentials.clone();
    let mut xbar: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in &telescope.x_gens {
        let id = gens.len();
        gens.push((format!("cxb{x}"), 1));
        differentials.push(f.images[x].clone());
        xbar.insert(x, id);
    }
    for &(y, x) in &telescope.y_gens {
        gens.push((format!("cyb{x}"), 2));
        let phi_x = &telescope.phi[&x];
        // u substitutes the bar generator into the first slot and the
        // f-images elsewhere
        let mut u = FormalElement::zero();
        for term in &phi_x.terms {
            let mut images: Vec<FormalElement> = Vec::with_capacity(term.arity);
            for (pos, &arg) in term.args.iter().enumerate() {
                if pos == 0 {
                    images.push(FormalElement::generator(xbar[&arg], one.clone()));
                } else {
                    images.push(f.images[arg].clone());
                }
            }
            let shell = FormalElement::term(
                term.coef.clone(),
                term.arity,
                term.op_index,
                (0..term.arity).collect(),
            );
            u = u.add(shell.substitute(&operad, &images)?);
        }
        let d = f.images[y]
            .clone()
            .add(FormalElement::generator(xbar[&x], -one.clone()))
            .add(u);
        differentials.push(d);
    }
    QuasiFreePresentation::new(operad, gens, differentials, weight_max, degree_max)
}

/// π₀ of `a` modulo the ideal generated by the images of the telescope
/// x-generators, computed by adjoining degree-1 killers; this is the
/// right-hand side of the cofiber π₀ law.
pub fn pi0_modulo_images(
    a: &QuasiFreePresentation,
    telescope: &Telescope,
    f: &TelescopeMap,
    weight_max: usize,
    degree_max: i64,
) -> Result<Pi0Report, PlusError> {
    let operad = a.operad().clone();
    let mut gens: Vec<(String, i64)> = a
        .algebra
        .generator_names
        .iter()
        .cloned()
        .zip(a.algebra.generator_degrees.iter().copied())
        .collect();
    let mut differentials = a.differentials.clone();
    for &x in &telescope.x_gens {
        gens.push((format!("k{x}"), 1));
        differentials.push(f.images[x].clone());
    }
    let p = QuasiFreePresentation::new(operad, gens, differentials, weight_max, degree_max)?;
    Ok(p.pi0())
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

    /// Root with two bracket-labeled odd children, each with two frontier
    /// leaves: the minimal Lie O-tree.
    pub(crate) fn minimal_lie_tree() -> OTree {
        let leaf = EvenVertex { children: vec![] };
        let odd = |l: &EvenVertex| OddVertex {
            coef: q().one(),
            label: 0,
            children: vec![l.clone(), l.clone()],
        };
        OTree {
            root: EvenVertex {
                children: vec![odd(&leaf), odd(&leaf)],
            },
        }
    }

    #[test]
    fn minimal_tree_generator_counts() {
        let op = lie(4);
        let tel = otree_telescope(&op, &minimal_lie_tree(), 1, 3, 2).unwrap();
        // 1 + 4 generators x, 1 generator y
        assert_eq!(tel.x_gens.len(), 5);
        assert_eq!(tel.y_gens.len(), 1);
        assert_eq!(tel.frontier.len(), 4);
        // d(y) = x - ([x1,x2] + [x3,x4])
        let y = tel.y_gens[0].0;
        let d = &tel.presentation.differentials[y];
        assert_eq!(d.terms.len(), 3);
    }

    #[test]
    fn r_max_zero_is_single_generator() {
        let op = lie(4);
        let tel = otree_telescope(&op, &minimal_lie_tree(), 0, 3, 2).unwrap();
        assert_eq!(tel.x_gens.len(), 1);
        assert!(tel.y_gens.is_empty());
        let pi0 = tel.presentation.pi0();
        // free Lie algebra on one even generator
        assert_eq!(pi0.dim(1), 1);
    }

    #[test]
    fn too_shallow_tree_rejected() {
        let op = lie(4);
        assert!(matches!(
            otree_telescope(&op, &minimal_lie_tree(), 2, 3, 2),
            Err(PlusError::TreeTooShallow { .. })
        ));
    }

    #[test]
    fn telescope_quillen_complex_pairs_interior_generators() {
        let op = lie(4);
        let tel = otree_telescope(&op, &minimal_lie_tree(), 1, 3, 2).unwrap();
        let hq = tel.presentation.quillen_homology(0..=1).unwrap();
        // the y kills the root x; the four frontier x's survive in degree 0
        assert_eq!(hq.dim(0), 4);
        assert_eq!(hq.dim(1), 0);
    }

    #[test]
    fn cone_kills_pi0_and_quillen_homology() {
        let op = lie(4);
        let tel = otree_telescope(&op, &minimal_lie_tree(), 1, 3, 3).unwrap();
        let cone = cone_presentation(&tel, 3, 3).unwrap();
        assert!(cone.pi0().is_zero());
        let hq = cone.quillen_homology(0..=2).unwrap();
        assert_eq!(hq.dim(0), 0);
        assert_eq!(hq.dim(1), 0);
        assert_eq!(hq.dim(2), 0);
    }

    #[test]
    fn cone_of_single_generator() {
        let op = lie(4);
        let tel = otree_telescope(&op, &minimal_lie_tree(), 0, 3, 2).unwrap();
        let cone = cone_presentation(&tel, 3, 2).unwrap();
        // generators x, xbar with d xbar = x
        assert_eq!(cone.generator_count(), 2);
        assert!(cone.pi0().is_zero());
    }

    #[test]
    fn cofiber_of_zero_map_keeps_pi0() {
        let op = lie(4);
        let tel = otree_telescope(&op, &minimal_lie_tree(), 0, 3, 3).unwrap();
        // a: free Lie algebra on one generator v
        let a = QuasiFreePresentation::new(
            op.clone(),
            vec![("v".into(), 0)],
            vec![FormalElement::zero()],
            3,
            3,
        )
        .unwrap();
        let f = TelescopeMap {
            images: vec![FormalElement::zero()],
        };
        let cof = cofiber_presentation(&a, &tel, &f, 3, 3).unwrap();
        let pi0_a = a.pi0();
        let pi0_c = cof.pi0();
        for w in 1..=3 {
            assert_eq!(pi0_a.dim(w), pi0_c.dim(w), "weight {w}");
        }
        // and it matches the quotient description
        let rhs = pi0_modulo_images(&a, &tel, &f, 3, 3).unwrap();
        for w in 1..=3 {
            assert_eq!(pi0_c.dim(w), rhs.dim(w));
        }
    }

    #[test]
    fn cofiber_rejects_non_chain_map() {
        let op = lie(4);
        let tel = otree_telescope(&op, &minimal_lie_tree(), 1, 3, 3).unwrap();
        let a = QuasiFreePresentation::new(
            op.clone(),
            vec![("v".into(), 0)],
            vec![FormalElement::zero()],
            3,
            3,
        )
        .unwrap();
        // map x_root -> v but frontier and y to zero: d f(y) = 0 but
        // f(dy) = v - 0 != 0
        let mut images = vec![FormalElement::zero(); tel.presentation.generator_count()];
        images[0] = FormalElement::generator(0, q().one());
        let f = TelescopeMap { images };
        assert!(matches!(
            cofiber_presentation(&a, &tel, &f, 3, 3),
            Err(PlusError::NotChainMap { .. })
        ));
    }
}
