//! Linking numbers between cycles of the two components and the linking
//! matrix.
//!
//! `lk(z, w)` is the signed count of crossings where an edge of `z`'s
//! component passes over an edge of `w`'s component, weighted by the
//! cycle coefficients. This is always an integer. On a diagram that is
//! realizable in the plane it equals the under-crossing count, which
//! [`over_under_consistent`] checks.

use num_bigint::BigInt;
use thiserror::Error;

use crate::diagram::{Diagram, Violation};
use crate::homology::{cycle_basis, Cycle, CycleBasis, HomologyError};
use crate::smith::{lk_invariant, IntMatrix, LkInvariant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkingError {
    #[error("both cycles lie in component {0}")]
    SameComponent(usize),
    #[error("cycle declared in component {component} has edge `{edge}` outside it")]
    SupportOutsideComponent { component: usize, edge: String },
    #[error("expected exactly 2 connected components, found {0}")]
    ComponentCount(usize),
    #[error("invalid diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

fn check_support(d: &Diagram, c: &Cycle) -> Result<(), LinkingError> {
    let comps = d.components();
    for (e, _) in c.support() {
        if comps
            .get(c.component)
            .is_none_or(|comp| !comp.contains_edge(e))
        {
            return Err(LinkingError::SupportOutsideComponent {
                component: c.component,
                edge: e.to_string(),
            });
        }
    }
    Ok(())
}

fn checked(d: &Diagram, z: &Cycle, w: &Cycle) -> Result<(), LinkingError> {
    if z.component == w.component {
        return Err(LinkingError::SameComponent(z.component));
    }
    check_support(d, z)?;
    check_support(d, w)
}

// Supports are validated, so a nonzero coefficient pins the component.
fn over_sum(d: &Diagram, z: &Cycle, w: &Cycle) -> i64 {
    d.crossings()
        .map(|c| c.sign.value() * z.coeff(&c.over.edge) * w.coeff(&c.under.edge))
        .sum()
}

/// Over-crossing linking number of `z` with `w`.
pub fn linking_number(d: &Diagram, z: &Cycle, w: &Cycle) -> Result<i64, LinkingError> {
    checked(d, z, w)?;
    Ok(over_sum(d, z, w))
}

/// Same count over crossings where `z`'s component is the under strand.
pub fn linking_number_under(d: &Diagram, z: &Cycle, w: &Cycle) -> Result<i64, LinkingError> {
    checked(d, z, w)?;
    Ok(over_sum(d, w, z))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingMatrix {
    pub entries: IntMatrix,
    pub basis1: CycleBasis,
    pub basis2: CycleBasis,
}

impl LinkingMatrix {
    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }

    pub fn invariant(&self) -> LkInvariant {
        lk_invariant(&self.entries)
    }
}

/// Validates `d` and requires exactly two components.
pub fn require_two_components(d: &Diagram) -> Result<(), LinkingError> {
    let v = d.validate();
    if !v.is_empty() {
        return Err(LinkingError::Invalid(v));
    }
    match d.components().len() {
        2 => Ok(()),
        n => Err(LinkingError::ComponentCount(n)),
    }
}

/// Matrix of linking numbers between given bases.
pub fn linking_matrix_for(
    d: &Diagram,
    basis1: CycleBasis,
    basis2: CycleBasis,
) -> Result<LinkingMatrix, LinkingError> {
    if basis1.component == basis2.component {
        return Err(LinkingError::SameComponent(basis1.component));
    }
    for c in basis1.cycles.iter().chain(&basis2.cycles) {
        check_support(d, c)?;
    }
    let mut entries = IntMatrix::zeros(basis1.cycles.len(), basis2.cycles.len());
    for (i, z) in basis1.cycles.iter().enumerate() {
        for (j, w) in basis2.cycles.iter().enumerate() {
            entries[(i, j)] = BigInt::from(over_sum(d, z, w));
        }
    }
    Ok(LinkingMatrix {
        entries,
        basis1,
        basis2,
    })
}

/// Linking matrix over the fundamental bases; rows index component 0,
/// columns component 1.
pub fn linking_matrix(d: &Diagram) -> Result<LinkingMatrix, LinkingError> {
    require_two_components(d)?;
    linking_matrix_for(d, cycle_basis(d, 0)?, cycle_basis(d, 1)?)
}

/// The invariant of a two-component diagram.
pub fn diagram_invariant(d: &Diagram) -> Result<LkInvariant, LinkingError> {
    Ok(linking_matrix(d)?.invariant())
}

/// Over-count equals under-count for every pair of basis cycles. A
/// necessary condition for planar realizability.
pub fn over_under_consistent(d: &Diagram) -> Result<bool, LinkingError> {
    let lm = linking_matrix(d)?;
    for z in &lm.basis1.cycles {
        for w in &lm.basis2.cycles {
            if over_sum(d, z, w) != over_sum(d, w, z) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{id, Crossing, Edge, Passage, Sign};
    use crate::sgd::parse_sgd;

    fn hopf() -> Diagram {
        parse_sgd(
            "sgd 1\nvertex a\nvertex b\nedge e1 a a\nedge e2 b b\n\
             crossing x1 over e1 0 under e2 0 sign +\n\
             crossing x2 over e2 1 under e1 1 sign +\n",
        )
        .unwrap()
    }

    #[test]
    fn hopf_counts() {
        let d = hopf();
        let z = Cycle::from_coeffs(0, [(id("e1"), 1)]);
        let w = Cycle::from_coeffs(1, [(id("e2"), 1)]);
        assert_eq!(linking_number(&d, &z, &w).unwrap(), 1);
        assert_eq!(linking_number_under(&d, &z, &w).unwrap(), 1);
        assert_eq!(linking_number(&d, &z.negated(), &w).unwrap(), -1);
        assert_eq!(linking_number(&d, &Cycle::new(0), &w).unwrap(), 0);
        assert_eq!(linking_number_under(&d, &Cycle::new(0), &w).unwrap(), 0);
        let lm = linking_matrix(&d).unwrap();
        assert_eq!(lm.entries, IntMatrix::from_rows(&[vec![1]]));
        assert_eq!(lm.invariant(), LkInvariant::Chain(vec![1.into()]));
        assert!(over_under_consistent(&d).unwrap());
    }

    #[test]
    fn argument_errors() {
        let d = hopf();
        let z = Cycle::from_coeffs(0, [(id("e1"), 1)]);
        assert_eq!(
            linking_number(&d, &z, &z),
            Err(LinkingError::SameComponent(0))
        );
        let bad = Cycle::from_coeffs(0, [(id("e2"), 1)]);
        let w = Cycle::from_coeffs(1, [(id("e2"), 1)]);
        assert!(matches!(
            linking_number(&d, &bad, &w),
            Err(LinkingError::SupportOutsideComponent { .. })
        ));
    }

    #[test]
    fn single_inter_crossing_is_unbalanced() {
        let d = Diagram::from_parts(
            [id("a"), id("b")],
            [
                Edge::new(id("e1"), id("a"), id("a")),
                Edge::new(id("e2"), id("b"), id("b")),
            ],
            [Crossing {
                id: id("x"),
                over: Passage::new(id("e1"), 0),
                under: Passage::new(id("e2"), 0),
                sign: Sign::Positive,
            }],
        )
        .unwrap();
        let z = Cycle::from_coeffs(0, [(id("e1"), 1)]);
        let w = Cycle::from_coeffs(1, [(id("e2"), 1)]);
        assert_eq!(linking_number(&d, &z, &w).unwrap(), 1);
        assert_eq!(linking_number_under(&d, &z, &w).unwrap(), 0);
        assert!(!over_under_consistent(&d).unwrap());
    }

    #[test]
    fn split_components_give_zero_matrix() {
        let d = parse_sgd("sgd 1\nvertex a\nvertex b\nedge e1 a a\nedge e2 a a\nedge f1 b b\n")
            .unwrap();
        let lm = linking_matrix(&d).unwrap();
        assert_eq!(lm.entries, IntMatrix::zeros(2, 1));
        assert_eq!(lm.invariant(), LkInvariant::Zero);
    }

    #[test]
    fn tree_component_gives_empty_matrix() {
        let d =
            parse_sgd("sgd 1\nvertex a\nvertex b\nvertex c\nedge e1 a a\nedge t b c\n").unwrap();
        let lm = linking_matrix(&d).unwrap();
        assert_eq!((lm.rows(), lm.cols()), (1, 0));
        assert_eq!(lm.invariant(), LkInvariant::Zero);
    }

    #[test]
    fn component_count_enforced() {
        let d = parse_sgd("sgd 1\nvertex a\nvertex b\nvertex c\n").unwrap();
        assert_eq!(linking_matrix(&d), Err(LinkingError::ComponentCount(3)));
        let d = parse_sgd("sgd 1\nvertex a\n").unwrap();
        assert_eq!(linking_matrix(&d), Err(LinkingError::ComponentCount(1)));
    }
}
