//! Linking-matrix invariants of two-component spatial graphs.
//!
//! The invariant `Lk(G1, G2)` of a two-component spatial graph is the
//! chain of elementary divisors of the matrix of linking numbers between
//! H1 bases of its components (or `0` when that chain is empty). It is a
//! complete invariant of neighborhood homotopy for two components.
//!
//! Pipeline: [`sgd`] parses a [`Diagram`], [`homology`] picks fundamental
//! cycle bases, [`linking`] assembles the linking matrix, [`smith`]
//! reduces it with a unimodular certificate, and [`classify`] compares two
//! diagrams. [`moves`] rewrites diagrams and builds canonical forms.

pub mod classify;
pub mod diagram;
pub mod generate;
pub mod homology;
pub mod linking;
pub mod moves;
pub mod sgd;
pub mod smith;

pub use classify::{classify, handlebody_mode, Obstruction, Outcome, Pairing, Verdict};
pub use diagram::{Crossing, Diagram, Edge, Ident, Passage, Sign, Violation};
pub use homology::{cycle_basis, rank, spanning_tree, Cycle, CycleBasis};
pub use linking::{
    diagram_invariant, linking_matrix, linking_number, linking_number_under, LinkingMatrix,
};
pub use moves::{canonical_diagram, random_homotopy_walk, Move, MoveKind, MoveRecord};
pub use sgd::{parse_sgd, serialize_sgd};
pub use smith::{
    divisors_via_minors, lk_invariant, smith_normal_form, IntMatrix, LkInvariant, SnfCertificate,
};
