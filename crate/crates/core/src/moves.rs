//! Diagram rewrites: crossing changes, clasps (Hopf chords), edge
//! contractions and vertex splittings, plus the canonical-form generator
//! and seeded random walks through homotopy-preserving moves.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{id, Crossing, Diagram, Edge, Ident, Passage, Sign};
use crate::linking::{diagram_invariant, LinkingError};
use crate::smith::LkInvariant;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("unknown crossing `{0}`")]
    UnknownCrossing(Ident),
    #[error("unknown edge `{0}`")]
    UnknownEdge(Ident),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(Ident),
    #[error("clasp needs two distinct edges, got `{0}` twice")]
    SameEdge(Ident),
    #[error("insertion index {index} out of range for edge `{edge}` with {passages} passages")]
    InsertionOutOfRange {
        edge: Ident,
        index: usize,
        passages: usize,
    },
    #[error("cannot contract loop `{0}`")]
    ContractLoop(Ident),
    #[error("cannot contract edge `{edge}`: it carries {passages} crossing passages")]
    ContractWithPassages { edge: Ident, passages: usize },
    #[error("invalid partition of edge-ends at `{vertex}`: {reason}")]
    InvalidPartition { vertex: Ident, reason: String },
    #[error("identifier `{0}` is already in use")]
    IdCollision(Ident),
    #[error("{0}")]
    Canonical(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Tail,
    Head,
}

/// One end of an edge, as attached to a vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeEnd {
    pub edge: Ident,
    pub end: End,
}

impl EdgeEnd {
    pub fn tail(edge: Ident) -> Self {
        EdgeEnd {
            edge,
            end: End::Tail,
        }
    }

    pub fn head(edge: Ident) -> Self {
        EdgeEnd {
            edge,
            end: End::Head,
        }
    }
}

impl fmt::Display for EdgeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = match self.end {
            End::Tail => "tail",
            End::Head => "head",
        };
        write!(f, "{}:{end}", self.edge)
    }
}

/// Edge-ends incident to `v`, sorted. A loop contributes both ends.
pub fn incident_ends(d: &Diagram, v: &Ident) -> Vec<EdgeEnd> {
    let mut out = Vec::new();
    for e in d.edges() {
        if &e.tail == v {
            out.push(EdgeEnd::tail(e.id.clone()));
        }
        if &e.head == v {
            out.push(EdgeEnd::head(e.id.clone()));
        }
    }
    out.sort();
    out
}

/// Swaps over and under strands and negates the sign.
pub fn crossing_change(d: &Diagram, xid: &Ident) -> Result<Diagram, MoveError> {
    let mut out = d.clone();
    let c = out
        .crossings_mut()
        .get_mut(xid)
        .ok_or_else(|| MoveError::UnknownCrossing(xid.clone()))?;
    std::mem::swap(&mut c.over, &mut c.under);
    c.sign = c.sign.flipped();
    Ok(out)
}

/// Inserts one Hopf chord between edges `e` and `f`: crossing A with `e`
/// over `f`, then crossing B with `f` over `e`, both of sign `eps`. On
/// `e` they occupy passages `pos_e` and `pos_e + 1`, on `f` passages
/// `pos_f` and `pos_f + 1`; later passages shift up by two.
pub fn clasp(
    d: &Diagram,
    e: &Ident,
    pos_e: usize,
    f: &Ident,
    pos_f: usize,
    eps: Sign,
) -> Result<Diagram, MoveError> {
    if e == f {
        return Err(MoveError::SameEdge(e.clone()));
    }
    for (edge, pos) in [(e, pos_e), (f, pos_f)] {
        if d.edge(edge).is_none() {
            return Err(MoveError::UnknownEdge(edge.clone()));
        }
        let passages = d.passage_count(edge);
        if pos > passages {
            return Err(MoveError::InsertionOutOfRange {
                edge: edge.clone(),
                index: pos,
                passages,
            });
        }
    }

    let mut out = d.clone();
    for c in out.crossings_mut().values_mut() {
        for p in [&mut c.over, &mut c.under] {
            if (&p.edge == e && p.index >= pos_e) || (&p.edge == f && p.index >= pos_f) {
                p.index += 2;
            }
        }
    }
    let xa = d.fresh_id("x", &[]);
    let xb = d.fresh_id("x", std::slice::from_ref(&xa));
    let crossings = out.crossings_mut();
    crossings.insert(
        xa.clone(),
        Crossing {
            id: xa,
            over: Passage::new(e.clone(), pos_e),
            under: Passage::new(f.clone(), pos_f),
            sign: eps,
        },
    );
    crossings.insert(
        xb.clone(),
        Crossing {
            id: xb,
            over: Passage::new(f.clone(), pos_f + 1),
            under: Passage::new(e.clone(), pos_e + 1),
            sign: eps,
        },
    );
    Ok(out)
}

/// Merges the head of a crossing-free, non-loop edge into its tail.
pub fn contract_edge(d: &Diagram, eid: &Ident) -> Result<Diagram, MoveError> {
    let edge = d
        .edge(eid)
        .ok_or_else(|| MoveError::UnknownEdge(eid.clone()))?
        .clone();
    if edge.is_loop() {
        return Err(MoveError::ContractLoop(eid.clone()));
    }
    let passages = d.passage_count(eid);
    if passages > 0 {
        return Err(MoveError::ContractWithPassages {
            edge: eid.clone(),
            passages,
        });
    }
    let mut out = d.clone();
    out.edges_mut().remove(eid);
    for e in out.edges_mut().values_mut() {
        if e.tail == edge.head {
            e.tail = edge.tail.clone();
        }
        if e.head == edge.head {
            e.head = edge.tail.clone();
        }
    }
    out.vertices_mut().remove(&edge.head);
    Ok(out)
}

/// Splits `vid`: ends in `keep` stay, ends in `moved` go to the new vertex
/// `new_vid`, and a crossing-free edge `new_eid` runs from `vid` to
/// `new_vid`. Contracting `new_eid` undoes the split.
pub fn split_vertex(
    d: &Diagram,
    vid: &Ident,
    keep: &[EdgeEnd],
    moved: &[EdgeEnd],
    new_vid: &Ident,
    new_eid: &Ident,
) -> Result<Diagram, MoveError> {
    if !d.has_vertex(vid) {
        return Err(MoveError::UnknownVertex(vid.clone()));
    }
    if new_vid == new_eid {
        return Err(MoveError::IdCollision(new_eid.clone()));
    }
    for fresh in [new_vid, new_eid] {
        if !d.is_fresh(fresh) {
            return Err(MoveError::IdCollision(fresh.clone()));
        }
    }
    let invalid = |reason: String| MoveError::InvalidPartition {
        vertex: vid.clone(),
        reason,
    };
    let incident: BTreeSet<EdgeEnd> = incident_ends(d, vid).into_iter().collect();
    let mut covered = BTreeSet::new();
    for end in keep.iter().chain(moved) {
        if !incident.contains(end) {
            return Err(invalid(format!("{end} is not incident")));
        }
        if !covered.insert(end.clone()) {
            return Err(invalid(format!("{end} listed more than once")));
        }
    }
    if let Some(missing) = incident.difference(&covered).next() {
        return Err(invalid(format!("{missing} is not covered")));
    }

    let mut out = d.clone();
    for end in moved {
        let e = out
            .edges_mut()
            .get_mut(&end.edge)
            .expect("incident edge exists");
        match end.end {
            End::Tail => e.tail = new_vid.clone(),
            End::Head => e.head = new_vid.clone(),
        }
    }
    out.vertices_mut().insert(new_vid.clone());
    out.edges_mut().insert(
        new_eid.clone(),
        Edge::new(new_eid.clone(), vid.clone(), new_vid.clone()),
    );
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    CrossingChange,
    Clasp,
    ContractEdge,
    SplitVertex,
}

impl MoveKind {
    pub fn token(self) -> &'static str {
        match self {
            MoveKind::CrossingChange => "crossing_change",
            MoveKind::Clasp => "clasp",
            MoveKind::ContractEdge => "contract_edge",
            MoveKind::SplitVertex => "split_vertex",
        }
    }
}

/// A move with all of its parameters. `Display`/`FromStr` give the replay
/// line format `<kind> <params...>`:
///
/// ```text
/// crossing_change x3
/// clasp e1 0 f2 4 +
/// contract_edge t1
/// split_vertex v new_v new_e e1:tail e2:head
/// ```
///
/// For `split_vertex` the listed ends move to the new vertex; every other
/// end stays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    CrossingChange {
        crossing: Ident,
    },
    Clasp {
        e: Ident,
        pos_e: usize,
        f: Ident,
        pos_f: usize,
        eps: Sign,
    },
    ContractEdge {
        edge: Ident,
    },
    SplitVertex {
        vertex: Ident,
        new_vertex: Ident,
        new_edge: Ident,
        moved: Vec<EdgeEnd>,
    },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::CrossingChange { .. } => MoveKind::CrossingChange,
            Move::Clasp { .. } => MoveKind::Clasp,
            Move::ContractEdge { .. } => MoveKind::ContractEdge,
            Move::SplitVertex { .. } => MoveKind::SplitVertex,
        }
    }

    /// Whether this move, applied to `d`, is a generator of neighborhood
    /// homotopy: crossing changes and clasps only within one component.
    pub fn is_homotopy_preserving(&self, d: &Diagram) -> bool {
        let same_component = |a: &Ident, b: &Ident| {
            let comps = d.components();
            let ca = Diagram::component_of_edge(&comps, a);
            ca.is_some() && ca == Diagram::component_of_edge(&comps, b)
        };
        match self {
            Move::CrossingChange { crossing } => d
                .crossing(crossing)
                .is_some_and(|c| same_component(&c.over.edge, &c.under.edge)),
            Move::Clasp { e, f, .. } => same_component(e, f),
            Move::ContractEdge { .. } | Move::SplitVertex { .. } => true,
        }
    }

    pub fn apply(&self, d: &Diagram) -> Result<Diagram, MoveError> {
        match self {
            Move::CrossingChange { crossing } => crossing_change(d, crossing),
            Move::Clasp {
                e,
                pos_e,
                f,
                pos_f,
                eps,
            } => clasp(d, e, *pos_e, f, *pos_f, *eps),
            Move::ContractEdge { edge } => contract_edge(d, edge),
            Move::SplitVertex {
                vertex,
                new_vertex,
                new_edge,
                moved,
            } => {
                let keep: Vec<EdgeEnd> = incident_ends(d, vertex)
                    .into_iter()
                    .filter(|end| !moved.contains(end))
                    .collect();
                split_vertex(d, vertex, &keep, moved, new_vertex, new_edge)
            }
        }
    }

    /// Applies the move and records whether it preserved homotopy class.
    pub fn apply_recorded(&self, d: &Diagram) -> Result<(Diagram, MoveRecord), MoveError> {
        let homotopy_preserving = self.is_homotopy_preserving(d);
        let out = self.apply(d)?;
        Ok((
            out,
            MoveRecord {
                mv: self.clone(),
                homotopy_preserving,
            },
        ))
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().token())?;
        match self {
            Move::CrossingChange { crossing } => write!(f, " {crossing}"),
            Move::Clasp {
                e,
                pos_e,
                f: g,
                pos_f,
                eps,
            } => write!(f, " {e} {pos_e} {g} {pos_f} {}", eps.symbol()),
            Move::ContractEdge { edge } => write!(f, " {edge}"),
            Move::SplitVertex {
                vertex,
                new_vertex,
                new_edge,
                moved,
            } => {
                write!(f, " {vertex} {new_vertex} {new_edge}")?;
                for end in moved {
                    write!(f, " {end}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("move line: {0}")]
pub struct MoveParseError(pub String);

impl FromStr for Move {
    type Err = MoveParseError;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let err = |m: &str| MoveParseError(format!("{m} in `{}`", line.trim()));
        let ident = |t: &str| Ident::new(t).map_err(|_| err(&format!("invalid identifier `{t}`")));
        let index = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| err(&format!("invalid index `{t}`")))
        };
        let arity = |n: usize| {
            if toks.len() == n {
                Ok(())
            } else {
                Err(err("wrong number of fields"))
            }
        };
        match toks.first().copied() {
            Some("crossing_change") => {
                arity(2)?;
                Ok(Move::CrossingChange {
                    crossing: ident(toks[1])?,
                })
            }
            Some("clasp") => {
                arity(6)?;
                let eps = match toks[5] {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    _ => return Err(err("invalid sign")),
                };
                Ok(Move::Clasp {
                    e: ident(toks[1])?,
                    pos_e: index(toks[2])?,
                    f: ident(toks[3])?,
                    pos_f: index(toks[4])?,
                    eps,
                })
            }
            Some("contract_edge") => {
                arity(2)?;
                Ok(Move::ContractEdge {
                    edge: ident(toks[1])?,
                })
            }
            Some("split_vertex") => {
                if toks.len() < 4 {
                    return Err(err("wrong number of fields"));
                }
                let moved = toks[4..]
                    .iter()
                    .map(|t| {
                        let (e, end) = t
                            .split_once(':')
                            .ok_or_else(|| err(&format!("invalid edge-end `{t}`")))?;
                        let end = match end {
                            "tail" => End::Tail,
                            "head" => End::Head,
                            _ => return Err(err(&format!("invalid edge-end `{t}`"))),
                        };
                        Ok(EdgeEnd {
                            edge: ident(e)?,
                            end,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Move::SplitVertex {
                    vertex: ident(toks[1])?,
                    new_vertex: ident(toks[2])?,
                    new_edge: ident(toks[3])?,
                    moved,
                })
            }
            Some(other) => Err(err(&format!("unknown move kind `{other}`"))),
            None => Err(err("empty line")),
        }
    }
}

/// Parses a move list, one move per line; `#` comments and blank lines
/// are skipped.
pub fn parse_move_list(text: &str) -> Result<Vec<Move>, MoveParseError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

pub fn format_move_list(moves: &[MoveRecord]) -> String {
    moves.iter().map(|r| format!("{}\n", r.mv)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveRecord {
    pub mv: Move,
    pub homotopy_preserving: bool,
}

impl MoveRecord {
    pub fn kind(&self) -> MoveKind {
        self.mv.kind()
    }
}

/// Two bouquets (`m` loops at `u1`, `n` loops at `u2`) where loop `i` of
/// each is joined by `divisors[i]` parallel positive clasps.
pub fn canonical_diagram(m: usize, n: usize, divisors: &[u64]) -> Result<Diagram, MoveError> {
    if divisors.len() > m.min(n) {
        return Err(MoveError::Canonical(format!(
            "divisor chain of length {} exceeds min({m}, {n})",
            divisors.len()
        )));
    }
    if let Some(i) = divisors.iter().position(|&x| x == 0) {
        return Err(MoveError::Canonical(format!("divisor {} is zero", i + 1)));
    }
    for w in divisors.windows(2) {
        if w[1] % w[0] != 0 {
            return Err(MoveError::Canonical(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
    }

    let (u1, u2) = (id("u1"), id("u2"));
    let z = |i: usize| id(&format!("z{:03}", i + 1));
    let w = |i: usize| id(&format!("w{:03}", i + 1));
    let mut d = Diagram::from_parts(
        [u1.clone(), u2.clone()],
        (0..m)
            .map(|i| Edge::new(z(i), u1.clone(), u1.clone()))
            .chain((0..n).map(|i| Edge::new(w(i), u2.clone(), u2.clone()))),
        [],
    )
    .expect("fresh identifiers");
    for (i, &k) in divisors.iter().enumerate() {
        for _ in 0..k {
            let (e, f) = (z(i), w(i));
            let (pe, pf) = (d.passage_count(&e), d.passage_count(&f));
            d = clasp(&d, &e, pe, &f, pf, Sign::Positive)?;
        }
    }
    Ok(d)
}

/// Draws one applicable homotopy-preserving move of `kind`, if any.
fn sample_move(d: &Diagram, kind: MoveKind, rng: &mut ChaCha8Rng) -> Option<Move> {
    let comps = d.components();
    match kind {
        MoveKind::CrossingChange => {
            let internal: Vec<&Crossing> = d
                .crossings()
                .filter(|c| {
                    let a = Diagram::component_of_edge(&comps, &c.over.edge);
                    a.is_some() && a == Diagram::component_of_edge(&comps, &c.under.edge)
                })
                .collect();
            internal.choose(rng).map(|c| Move::CrossingChange {
                crossing: c.id.clone(),
            })
        }
        MoveKind::Clasp => {
            let eligible: Vec<_> = comps.iter().filter(|c| c.edges.len() >= 2).collect();
            let comp = eligible.choose(rng)?;
            let mut pair: Vec<&Ident> = comp.edges.iter().collect();
            pair.shuffle(rng);
            let (e, f) = (pair[0].clone(), pair[1].clone());
            let pos_e = rng.random_range(0..=d.passage_count(&e));
            let pos_f = rng.random_range(0..=d.passage_count(&f));
            let eps = if rng.random_bool(0.5) {
                Sign::Positive
            } else {
                Sign::Negative
            };
            Some(Move::Clasp {
                e,
                pos_e,
                f,
                pos_f,
                eps,
            })
        }
        MoveKind::ContractEdge => {
            let legal: Vec<&Edge> = d
                .edges()
                .filter(|e| !e.is_loop() && d.passage_count(&e.id) == 0)
                .collect();
            legal
                .choose(rng)
                .map(|e| Move::ContractEdge { edge: e.id.clone() })
        }
        MoveKind::SplitVertex => {
            let vertices: Vec<&Ident> = d.vertices().collect();
            let vertex = (*vertices.choose(rng)?).clone();
            let moved = incident_ends(d, &vertex)
                .into_iter()
                .filter(|_| rng.random_bool(0.5))
                .collect();
            let new_vertex = d.fresh_id("v", &[]);
            let new_edge = d.fresh_id("s", std::slice::from_ref(&new_vertex));
            Some(Move::SplitVertex {
                vertex,
                new_vertex,
                new_edge,
                moved,
            })
        }
    }
}

const KINDS: [MoveKind; 4] = [
    MoveKind::CrossingChange,
    MoveKind::Clasp,
    MoveKind::ContractEdge,
    MoveKind::SplitVertex,
];

/// Applies `steps` homotopy-preserving moves, each drawn by picking a move
/// kind uniformly and then an applicable instance of it uniformly.
/// Inapplicable draws are skipped. Vertex splitting is always applicable
/// on a nonempty diagram, so the walk terminates.
pub fn random_homotopy_walk(d: &Diagram, steps: usize, seed: u64) -> (Diagram, Vec<MoveRecord>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut records = Vec::with_capacity(steps);
    if cur.vertex_count() == 0 {
        return (cur, records);
    }
    while records.len() < steps {
        let kind = KINDS[rng.random_range(0..KINDS.len())];
        let Some(mv) = sample_move(&cur, kind, &mut rng) else {
            continue;
        };
        let (next, rec) = mv
            .apply_recorded(&cur)
            .expect("sampled moves are applicable");
        debug_assert!(rec.homotopy_preserving);
        cur = next;
        records.push(rec);
    }
    (cur, records)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error(transparent)]
    Linking(#[from] LinkingError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("move {step} (`{mv}`) is not homotopy preserving")]
    NotHomotopy { step: usize, mv: Move },
    #[error("invariant changed at move {step} (`{mv}`): {before} -> {after}")]
    InvariantChanged {
        step: usize,
        mv: Move,
        before: Box<LkInvariant>,
        after: Box<LkInvariant>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckedWalk {
    pub diagram: Diagram,
    pub moves: Vec<MoveRecord>,
    pub invariant: LkInvariant,
}

/// Replays `moves` from `d`, recomputing the invariant after every move
/// and failing on the first change or on a move that is not a homotopy
/// generator.
pub fn replay_checked(d: &Diagram, moves: &[Move]) -> Result<CheckedWalk, WalkError> {
    let invariant = diagram_invariant(d)?;
    let mut cur = d.clone();
    let mut records = Vec::with_capacity(moves.len());
    for (step, mv) in moves.iter().enumerate() {
        let (next, rec) = mv.apply_recorded(&cur)?;
        if !rec.homotopy_preserving {
            return Err(WalkError::NotHomotopy {
                step: step + 1,
                mv: mv.clone(),
            });
        }
        let after = diagram_invariant(&next)?;
        if after != invariant {
            return Err(WalkError::InvariantChanged {
                step: step + 1,
                mv: mv.clone(),
                before: Box::new(invariant),
                after: Box::new(after),
            });
        }
        cur = next;
        records.push(rec);
    }
    Ok(CheckedWalk {
        diagram: cur,
        moves: records,
        invariant,
    })
}

/// [`random_homotopy_walk`] with a per-step invariant self-check.
pub fn checked_walk(d: &Diagram, steps: usize, seed: u64) -> Result<CheckedWalk, WalkError> {
    diagram_invariant(d)?;
    let (_, records) = random_homotopy_walk(d, steps, seed);
    let moves: Vec<Move> = records.into_iter().map(|r| r.mv).collect();
    replay_checked(d, &moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::rank;
    use crate::linking::{diagram_invariant, linking_matrix, over_under_consistent};
    use crate::sgd::{parse_sgd, serialize_sgd};
    use crate::smith::{IntMatrix, LkInvariant};
    use num_bigint::BigInt;

    fn chain(v: &[i64]) -> LkInvariant {
        LkInvariant::Chain(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn split_pair() -> Diagram {
        parse_sgd("sgd 1\nvertex a\nvertex b\nedge e1 a a\nedge e2 b b\n").unwrap()
    }

    #[test]
    fn crossing_change_involution_and_hopf_recount() {
        let hopf = canonical_diagram(1, 1, &[1]).unwrap();
        for c in hopf.crossings() {
            let once = crossing_change(&hopf, &c.id).unwrap();
            assert_ne!(once, hopf);
            assert_eq!(crossing_change(&once, &c.id).unwrap(), hopf);
        }
        // x1 has z001 over w001. Flipping it leaves no z-over-w crossing.
        let flipped = crossing_change(&hopf, &id("x1")).unwrap();
        assert_eq!(
            linking_matrix(&flipped).unwrap().entries,
            IntMatrix::from_rows(&[vec![0]])
        );
        // x2 has w001 over z001; flipping it adds a negative z-over-w crossing.
        let flipped = crossing_change(&hopf, &id("x2")).unwrap();
        assert_eq!(
            linking_matrix(&flipped).unwrap().entries,
            IntMatrix::from_rows(&[vec![0]])
        );
        assert!(matches!(
            crossing_change(&hopf, &id("nope")),
            Err(MoveError::UnknownCrossing(_))
        ));
    }

    #[test]
    fn clasp_on_split_pair_gives_hopf() {
        let d = clasp(&split_pair(), &id("e1"), 0, &id("e2"), 0, Sign::Positive).unwrap();
        assert_eq!(
            serialize_sgd(&d),
            "sgd 1\nvertex a\nvertex b\nedge e1 a a\nedge e2 b b\n\
             crossing x1 over e1 0 under e2 0 sign +\ncrossing x2 over e2 1 under e1 1 sign +\n"
        );
        assert_eq!(
            linking_matrix(&d).unwrap().entries,
            IntMatrix::from_rows(&[vec![1]])
        );
        assert!(over_under_consistent(&d).unwrap());
    }

    #[test]
    fn clasp_errors() {
        let d = split_pair();
        assert!(matches!(
            clasp(&d, &id("e1"), 0, &id("e1"), 0, Sign::Positive),
            Err(MoveError::SameEdge(_))
        ));
        assert!(matches!(
            clasp(&d, &id("e1"), 1, &id("e2"), 0, Sign::Positive),
            Err(MoveError::InsertionOutOfRange {
                index: 1,
                passages: 0,
                ..
            })
        ));
        assert!(matches!(
            clasp(&d, &id("q"), 0, &id("e2"), 0, Sign::Positive),
            Err(MoveError::UnknownEdge(_))
        ));
    }

    #[test]
    fn opposite_clasps_cancel_in_matrix() {
        let d = canonical_diagram(2, 2, &[1, 6]).unwrap();
        let before = linking_matrix(&d).unwrap().entries;
        let once = clasp(&d, &id("z001"), 1, &id("w002"), 3, Sign::Positive).unwrap();
        assert_ne!(linking_matrix(&once).unwrap().entries, before);
        let twice = clasp(&once, &id("z001"), 3, &id("w002"), 5, Sign::Negative).unwrap();
        assert!(twice.validate().is_empty());
        assert_eq!(linking_matrix(&twice).unwrap().entries, before);
    }

    #[test]
    fn intra_component_clasp_keeps_invariant() {
        let d =
            parse_sgd("sgd 1\nvertex a\nvertex b\nedge e1 a a\nedge e2 a a\nedge f b b\n").unwrap();
        let d = clasp(&d, &id("e1"), 0, &id("f"), 0, Sign::Positive).unwrap();
        let inv = diagram_invariant(&d).unwrap();
        let mv = Move::Clasp {
            e: id("e1"),
            pos_e: 1,
            f: id("e2"),
            pos_f: 0,
            eps: Sign::Negative,
        };
        assert!(mv.is_homotopy_preserving(&d));
        let (after, rec) = mv.apply_recorded(&d).unwrap();
        assert!(rec.homotopy_preserving);
        assert_eq!(diagram_invariant(&after).unwrap(), inv);
        assert!(!Move::Clasp {
            e: id("e1"),
            pos_e: 0,
            f: id("f"),
            pos_f: 0,
            eps: Sign::Positive
        }
        .is_homotopy_preserving(&d));
    }

    #[test]
    fn contract_tree_edge_of_triangle_plus_loop() {
        let d = parse_sgd(
            "sgd 1\nvertex a\nvertex b\nvertex c\nvertex p\n\
             edge e1 a b\nedge e2 b c\nedge e3 c a\nedge l a a\nedge q p p\n\
             crossing x1 over l 0 under q 0 sign +\ncrossing x2 over q 1 under l 1 sign +\n\
             crossing x3 over e2 0 under q 2 sign -\ncrossing x4 over q 3 under e2 1 sign -\n",
        )
        .unwrap();
        let inv = diagram_invariant(&d).unwrap();
        assert_eq!(inv, chain(&[1]));
        let r = rank(&d, 0).unwrap();
        let c = contract_edge(&d, &id("e1")).unwrap();
        assert_eq!(rank(&c, 0).unwrap(), r);
        assert_eq!(diagram_invariant(&c).unwrap(), inv);
        assert!(!c.has_vertex(&id("b")));
        assert!(matches!(
            contract_edge(&d, &id("l")),
            Err(MoveError::ContractLoop(_))
        ));
        assert!(matches!(
            contract_edge(&d, &id("e2")),
            Err(MoveError::ContractWithPassages { passages: 2, .. })
        ));
        assert!(matches!(
            contract_edge(&d, &id("zz")),
            Err(MoveError::UnknownEdge(_))
        ));
    }

    #[test]
    fn contract_path_edge() {
        let d = parse_sgd("sgd 1\nvertex a\nvertex b\nvertex c\nedge e a b\nedge l c c\n").unwrap();
        let c = contract_edge(&d, &id("e")).unwrap();
        assert_eq!(c.components()[0].vertices, vec![id("a")]);
        assert!(c.components()[0].edges.is_empty());
    }

    #[test]
    fn split_then_contract_is_identity() {
        let d = canonical_diagram(3, 2, &[2]).unwrap();
        let ends = incident_ends(&d, &id("u1"));
        assert_eq!(ends.len(), 6);
        let (moved, keep): (Vec<_>, Vec<_>) = ends.into_iter().partition(|e| e.edge == id("z001"));
        let s = split_vertex(&d, &id("u1"), &keep, &moved, &id("n1"), &id("t1")).unwrap();
        assert_eq!(rank(&s, 0).unwrap(), 3);
        assert_eq!(diagram_invariant(&s).unwrap(), chain(&[2]));
        assert_eq!(contract_edge(&s, &id("t1")).unwrap(), d);

        // Moving just one end of a loop.
        let one = vec![EdgeEnd::head(id("z002"))];
        let rest: Vec<_> = incident_ends(&d, &id("u1"))
            .into_iter()
            .filter(|e| !one.contains(e))
            .collect();
        let s = split_vertex(&d, &id("u1"), &rest, &one, &id("n1"), &id("t1")).unwrap();
        assert_eq!(rank(&s, 0).unwrap(), 3);
        assert_eq!(contract_edge(&s, &id("t1")).unwrap(), d);
    }

    #[test]
    fn split_rejects_bad_partitions() {
        let d = canonical_diagram(1, 1, &[]).unwrap();
        let all = incident_ends(&d, &id("u1"));
        let r = split_vertex(&d, &id("u1"), &all[..1], &[], &id("n"), &id("t"));
        assert!(matches!(r, Err(MoveError::InvalidPartition { .. })));
        let r = split_vertex(&d, &id("u1"), &all, &all[..1], &id("n"), &id("t"));
        assert!(matches!(r, Err(MoveError::InvalidPartition { .. })));
        let r = split_vertex(&d, &id("u1"), &all, &[], &id("u2"), &id("t"));
        assert!(matches!(r, Err(MoveError::IdCollision(_))));
        let r = split_vertex(&d, &id("u1"), &all, &[], &id("n"), &id("w001"));
        assert!(matches!(r, Err(MoveError::IdCollision(_))));
        let r = split_vertex(
            &d,
            &id("u1"),
            &all,
            &[EdgeEnd::tail(id("w001"))],
            &id("n"),
            &id("t"),
        );
        assert!(matches!(r, Err(MoveError::InvalidPartition { .. })));
    }

    #[test]
    fn canonical_examples() {
        let hopf = canonical_diagram(1, 1, &[1]).unwrap();
        assert_eq!(diagram_invariant(&hopf).unwrap(), chain(&[1]));
        assert_eq!(hopf.crossing_count(), 2);
        let split = canonical_diagram(2, 3, &[]).unwrap();
        assert_eq!(split.crossing_count(), 0);
        assert_eq!(diagram_invariant(&split).unwrap(), LkInvariant::Zero);
        let d = canonical_diagram(2, 2, &[1, 6]).unwrap();
        assert_eq!(
            linking_matrix(&d).unwrap().entries,
            IntMatrix::from_rows(&[vec![1, 0], vec![0, 6]])
        );
        assert_eq!(diagram_invariant(&d).unwrap(), chain(&[1, 6]));
        assert!(over_under_consistent(&d).unwrap());
    }

    #[test]
    fn canonical_rejects_bad_chains() {
        assert!(
            matches!(canonical_diagram(2, 2, &[2, 3]), Err(MoveError::Canonical(m)) if m == "2 does not divide 3")
        );
        assert!(canonical_diagram(1, 2, &[1, 1]).is_err());
        assert!(canonical_diagram(2, 2, &[0]).is_err());
    }

    #[test]
    fn walk_is_deterministic_and_preserves_invariant() {
        let d = canonical_diagram(2, 2, &[1, 6]).unwrap();
        let (same, none) = random_homotopy_walk(&d, 0, 5);
        assert_eq!(same, d);
        assert!(none.is_empty());

        let (a, ma) = random_homotopy_walk(&d, 40, 11);
        let (b, mb) = random_homotopy_walk(&d, 40, 11);
        assert_eq!(a, b);
        assert_eq!(ma, mb);
        assert_eq!(ma.len(), 40);
        assert!(ma.iter().all(|r| r.homotopy_preserving));
        assert_eq!(diagram_invariant(&a).unwrap(), chain(&[1, 6]));
        assert!(over_under_consistent(&a).unwrap());

        let walk = checked_walk(&d, 40, 11).unwrap();
        assert_eq!(walk.diagram, a);
    }

    #[test]
    fn replay_rejects_inter_component_moves() {
        let d = canonical_diagram(1, 1, &[1]).unwrap();
        let err = replay_checked(&d, &[Move::CrossingChange { crossing: id("x1") }]).unwrap_err();
        assert!(matches!(err, WalkError::NotHomotopy { step: 1, .. }));
    }

    #[test]
    fn move_lines_round_trip() {
        let d = canonical_diagram(3, 3, &[2, 4]).unwrap();
        let (_, records) = random_homotopy_walk(&d, 60, 3);
        let text = format_move_list(&records);
        let parsed = parse_move_list(&text).unwrap();
        assert_eq!(
            parsed,
            records.iter().map(|r| r.mv.clone()).collect::<Vec<_>>()
        );
        assert!("clasp a 0 b".parse::<Move>().is_err());
        assert!("twist a".parse::<Move>().is_err());
        assert!("split_vertex v n t e:middle".parse::<Move>().is_err());
    }
}
