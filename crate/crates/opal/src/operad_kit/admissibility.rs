//! Bounded admissibility probe: compares the homology of a presentation A
//! with that of A ⊔ S(O, W_d), where W_d is an acyclic two-term generator
//! pair in degrees d, d+1. A difference within the bounds is an
//! obstruction to admissibility; "no obstruction" is not a proof.

use crate::plus_construction::{FormalElement, PlusError, QuasiFreePresentation};

use super::OperadTruncation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibilityVerdict {
    /// First (weight, degree) where the homologies differ.
    Obstruction {
        weight: usize,
        degree: i64,
    },
    NoObstructionWithinBounds {
        weight_max: usize,
        degree_max: i64,
    },
}

impl std::fmt::Display for AdmissibilityVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdmissibilityVerdict::Obstruction { weight, degree } => {
                write!(f, "obstruction at weight {weight}, degree {degree}")
            }
            AdmissibilityVerdict::NoObstructionWithinBounds {
                weight_max,
                degree_max,
            } => {
                write!(
                    f,
                    "no obstruction within bounds (weight <= {weight_max}, degree <= {degree_max})"
                )
            }
        }
    }
}

/// Probes admissibility of an operad by adjoining the free acyclic pair
/// S(O, W_d) to a base presentation (the zero algebra when absent) and
/// comparing per-(weight, degree) homology. Requires weight-graded
/// differentials so the comparison splits by weight.
pub fn admissibility_probe(
    operad: &OperadTruncation,
    base: Option<&QuasiFreePresentation>,
    d: i64,
    weight_max: usize,
    degree_max: i64,
) -> Result<AdmissibilityVerdict, PlusError> {
    let (mut gens, mut diffs): (Vec<(String, i64)>, Vec<FormalElement>) = match base {
        None => (Vec::new(), Vec::new()),
        Some(p) => (
            p.algebra
                .generator_names
                .iter()
                .cloned()
                .zip(p.algebra.generator_degrees.iter().copied())
                .collect(),
            p.differentials.clone(),
        ),
    };
    // expand one degree beyond the comparison range so every compared
    // degree sees its incoming differential
    let internal_degree = degree_max + 1;
    let base_presentation = QuasiFreePresentation::new(
        operad.clone(),
        gens.clone(),
        diffs.clone(),
        weight_max,
        internal_degree,
    )?;
    let w_index = gens.len();
    gens.push(("w".into(), d));
    diffs.push(FormalElement::zero());
    gens.push(("w'".into(), d + 1));
    diffs.push(FormalElement::generator(w_index, operad.domain.one()));
    let extended =
        QuasiFreePresentation::new(operad.clone(), gens, diffs, weight_max, internal_degree)?;

    let base_h = base_presentation.weight_graded_homology()?;
    let ext_h = extended.weight_graded_homology()?;
    for weight in 1..=weight_max {
        for degree in 0..=degree_max {
            let a = base_h.get(&(weight, degree)).copied().unwrap_or(0);
            let b = ext_h.get(&(weight, degree)).copied().unwrap_or(0);
            if a != b {
                return Ok(AdmissibilityVerdict::Obstruction { weight, degree });
            }
        }
    }
    Ok(AdmissibilityVerdict::NoObstructionWithinBounds {
        weight_max,
        degree_max,
    })
}
