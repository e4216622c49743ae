//! Neighborhood-homotopy classification of two-component diagrams.
//!
//! Two diagrams are neighborhood homotopic exactly when their component
//! ranks agree (under some pairing of components) and their invariants
//! are equal. Elementary divisors are transpose invariant, so the swapped
//! pairing reuses the same invariant.

use std::fmt;

use crate::diagram::Diagram;
use crate::linking::{linking_matrix, LinkingError};
use crate::smith::LkInvariant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Equivalent,
    Inequivalent,
    /// Not produced by the current procedure: rank mismatch is already a
    /// certificate of inequivalence and malformed input is an error.
    HypothesisViolated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pairing {
    Ordered,
    Swapped,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Obstruction {
    Rank,
    Divisors,
}

impl Obstruction {
    pub fn tag(self) -> &'static str {
        match self {
            Obstruction::Rank => "rank",
            Obstruction::Divisors => "divisors",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    SpatialGraph,
    /// Diagrams are spines of handlebody-links; ranks are genera.
    Handlebody,
}

/// Ranks and invariant of one diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub ranks: [usize; 2],
    pub invariant: LkInvariant,
}

impl Summary {
    pub fn of(d: &Diagram) -> Result<Self, LinkingError> {
        let lm = linking_matrix(d)?;
        Ok(Summary {
            ranks: [lm.rows(), lm.cols()],
            invariant: lm.invariant(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub result: Outcome,
    pub pairing: Pairing,
    pub mode: Mode,
    pub invariants: [LkInvariant; 2],
    /// `[m, n, m', n']`.
    pub ranks: [usize; 4],
    pub obstruction: Option<Obstruction>,
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        self.result == Outcome::Equivalent
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.mode {
            Mode::SpatialGraph => "ranks",
            Mode::Handlebody => "genera",
        };
        let r = self.ranks;
        match self.result {
            Outcome::Equivalent => f.write_str("equivalent")?,
            Outcome::Inequivalent => f.write_str("inequivalent")?,
            Outcome::HypothesisViolated => f.write_str("hypothesis violated")?,
        }
        if let Some(o) = self.obstruction {
            write!(f, " (obstruction: {})", o.tag())?;
        }
        match self.pairing {
            Pairing::Ordered => f.write_str(", ordered pairing")?,
            Pairing::Swapped => f.write_str(", swapped pairing")?,
            Pairing::None => {}
        }
        write!(
            f,
            "\n  A: {label} ({}, {}), Lk = {}\n  B: {label} ({}, {}), Lk = {}",
            r[0], r[1], self.invariants[0], r[2], r[3], self.invariants[1]
        )
    }
}

/// Decision procedure on precomputed summaries.
pub fn decide(a: &Summary, b: &Summary, ordered: bool, mode: Mode) -> Verdict {
    let [m, n] = a.ranks;
    let [m2, n2] = b.ranks;
    let pairing = if (m, n) == (m2, n2) {
        Pairing::Ordered
    } else if !ordered && (m, n) == (n2, m2) {
        Pairing::Swapped
    } else {
        Pairing::None
    };
    let (result, obstruction) = match pairing {
        Pairing::None => (Outcome::Inequivalent, Some(Obstruction::Rank)),
        _ if a.invariant == b.invariant => (Outcome::Equivalent, None),
        _ => (Outcome::Inequivalent, Some(Obstruction::Divisors)),
    };
    Verdict {
        result,
        pairing,
        mode,
        invariants: [a.invariant.clone(), b.invariant.clone()],
        ranks: [m, n, m2, n2],
        obstruction,
    }
}

/// Decides neighborhood homotopy of two two-component diagrams. With
/// `ordered`, component `i` of `a` must correspond to component `i` of
/// `b`; otherwise the swapped pairing is also admitted.
pub fn classify(a: &Diagram, b: &Diagram, ordered: bool) -> Result<Verdict, LinkingError> {
    Ok(decide(
        &Summary::of(a)?,
        &Summary::of(b)?,
        ordered,
        Mode::SpatialGraph,
    ))
}

/// Homotopy of handlebody-links given by their spines. Same decision as
/// unordered [`classify`]; ranks are reported as genera.
pub fn handlebody_mode(a: &Diagram, b: &Diagram) -> Result<Verdict, LinkingError> {
    Ok(decide(
        &Summary::of(a)?,
        &Summary::of(b)?,
        false,
        Mode::Handlebody,
    ))
}
