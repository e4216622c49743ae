//! Combinatorial spatial-graph diagrams.
//!
//! A [`Diagram`] is a Gauss-code-like object: an abstract graph with
//! oriented edges, where each edge carries an ordered list of *passages*
//! through crossings. Planar realizability is not checked here; see
//! [`crate::linking::over_under_consistent`] for a necessary condition.
//!
//! Crossing sign convention: a crossing is `+1` when the ordered pair
//! (over-strand tangent, under-strand tangent), both taken tail to head,
//! forms a right-handed planar frame.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Opaque identifier matching `[A-Za-z0-9_]+`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident(String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid identifier {0:?}: expected [A-Za-z0-9_]+")]
pub struct InvalidIdent(pub String);

impl Ident {
    pub fn new(s: impl Into<String>) -> Result<Self, InvalidIdent> {
        let s = s.into();
        if Self::is_valid(&s) {
            Ok(Ident(s))
        } else {
            Err(InvalidIdent(s))
        }
    }

    pub fn is_valid(s: &str) -> bool {
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Ident {
    type Err = InvalidIdent;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ident::new(s)
    }
}

impl AsRef<str> for Ident {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Shorthand for identifiers known to be valid at the call site.
///
/// Panics on an invalid token; intended for literals and generated names.
pub fn id(s: &str) -> Ident {
    Ident::new(s).expect("valid identifier literal")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// An oriented edge. Passages along it are indexed in tail-to-head order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: Ident,
    pub tail: Ident,
    pub head: Ident,
}

impl Edge {
    pub fn new(id: Ident, tail: Ident, head: Ident) -> Self {
        Edge { id, tail, head }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// The `index`-th passage of `edge` through some crossing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Passage {
    pub edge: Ident,
    pub index: usize,
}

impl Passage {
    pub fn new(edge: Ident, index: usize) -> Self {
        Passage { edge, index }
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.edge, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub id: Ident,
    pub over: Passage,
    pub under: Passage,
    pub sign: Sign,
}

/// A connected component of the abstract graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Sorted ascending; the first entry is the ordering key.
    pub vertices: Vec<Ident>,
    /// Sorted ascending.
    pub edges: Vec<Ident>,
}

impl Component {
    pub fn contains_edge(&self, e: &Ident) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn contains_vertex(&self, v: &Ident) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    /// First Betti number `E - V + 1`.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }
}

/// A diagram value. It may violate invariants (see [`Diagram::validate`]);
/// every constructor that can fail validates, except
/// [`Diagram::from_parts_unchecked`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    vertices: BTreeSet<Ident>,
    edges: BTreeMap<Ident, Edge>,
    crossings: BTreeMap<Ident, Crossing>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("duplicate {kind} identifier `{id}`")]
    Duplicate { kind: &'static str, id: Ident },
    #[error("invalid diagram: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A broken invariant, naming the offending entity.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    DanglingVertex { edge: Ident, vertex: Ident },
    #[error("crossing `{crossing}` references unknown edge `{edge}`")]
    DanglingEdge { crossing: Ident, edge: Ident },
    #[error("crossing `{crossing}` uses the same passage {passage} as over and under strand")]
    SamePassage { crossing: Ident, passage: Passage },
    #[error("edge `{edge}`: passage index {index} used by more than one crossing")]
    DuplicatePassage { edge: Ident, index: usize },
    #[error("edge `{edge}`: passage-index gap, index {missing} is unused")]
    PassageGap { edge: Ident, missing: usize },
    #[error("expected 2 connected components, found {found}")]
    ComponentCount { found: usize },
}

impl Violation {
    /// Stable name of the invariant class.
    pub fn class(&self) -> &'static str {
        match self {
            Violation::DanglingVertex { .. } => "dangling-vertex",
            Violation::DanglingEdge { .. } => "dangling-edge",
            Violation::SamePassage { .. } => "same-passage",
            Violation::DuplicatePassage { .. } => "duplicate-passage",
            Violation::PassageGap { .. } => "passage-index-gap",
            Violation::ComponentCount { .. } => "component-count",
        }
    }
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a diagram and validates it.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = Ident>,
        edges: impl IntoIterator<Item = Edge>,
        crossings: impl IntoIterator<Item = Crossing>,
    ) -> Result<Self, BuildError> {
        let d = Self::from_parts_unchecked(vertices, edges, crossings)?;
        let violations = d.validate();
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(BuildError::Invalid(violations))
        }
    }

    /// Builds a diagram rejecting only duplicate identifiers.
    pub fn from_parts_unchecked(
        vertices: impl IntoIterator<Item = Ident>,
        edges: impl IntoIterator<Item = Edge>,
        crossings: impl IntoIterator<Item = Crossing>,
    ) -> Result<Self, BuildError> {
        let mut d = Diagram::new();
        for v in vertices {
            if !d.vertices.insert(v.clone()) {
                return Err(BuildError::Duplicate {
                    kind: "vertex",
                    id: v,
                });
            }
        }
        for e in edges {
            if d.edges.contains_key(&e.id) {
                return Err(BuildError::Duplicate {
                    kind: "edge",
                    id: e.id,
                });
            }
            d.edges.insert(e.id.clone(), e);
        }
        for c in crossings {
            if d.crossings.contains_key(&c.id) {
                return Err(BuildError::Duplicate {
                    kind: "crossing",
                    id: c.id,
                });
            }
            d.crossings.insert(c.id.clone(), c);
        }
        Ok(d)
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &Ident> + '_ {
        self.vertices.iter()
    }

    pub fn has_vertex(&self, v: &Ident) -> bool {
        self.vertices.contains(v)
    }

    /// Edges in ascending identifier order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &Edge> + '_ {
        self.edges.values()
    }

    pub fn edge(&self, e: &Ident) -> Option<&Edge> {
        self.edges.get(e)
    }

    /// Crossings in ascending identifier order.
    pub fn crossings(&self) -> impl ExactSizeIterator<Item = &Crossing> + '_ {
        self.crossings.values()
    }

    pub fn crossing(&self, x: &Ident) -> Option<&Crossing> {
        self.crossings.get(x)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Number of crossing passages along `e` (0 for unknown edges).
    pub fn passage_count(&self, e: &Ident) -> usize {
        self.crossings
            .values()
            .flat_map(|c| [&c.over, &c.under])
            .filter(|p| &p.edge == e)
            .count()
    }

    pub(crate) fn vertices_mut(&mut self) -> &mut BTreeSet<Ident> {
        &mut self.vertices
    }

    pub(crate) fn edges_mut(&mut self) -> &mut BTreeMap<Ident, Edge> {
        &mut self.edges
    }

    pub(crate) fn crossings_mut(&mut self) -> &mut BTreeMap<Ident, Crossing> {
        &mut self.crossings
    }

    /// True if `id` is unused as a vertex, edge or crossing identifier.
    pub fn is_fresh(&self, id: &Ident) -> bool {
        !self.vertices.contains(id)
            && !self.edges.contains_key(id)
            && !self.crossings.contains_key(id)
    }

    /// Smallest `<prefix><n>` (n = 1, 2, ...) unused by any entity and
    /// not in `also_taken`.
    pub fn fresh_id(&self, prefix: &str, also_taken: &[Ident]) -> Ident {
        (1..)
            .map(|n| id(&format!("{prefix}{n}")))
            .find(|c| self.is_fresh(c) && !also_taken.contains(c))
            .expect("unbounded search")
    }

    /// Every broken invariant of the data model. Empty iff valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for e in self.edges.values() {
            for v in [&e.tail, &e.head] {
                if !self.vertices.contains(v) {
                    out.push(Violation::DanglingVertex {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    });
                }
                if e.is_loop() {
                    break;
                }
            }
        }

        let mut used: BTreeMap<&Ident, BTreeMap<usize, usize>> = BTreeMap::new();
        for c in self.crossings.values() {
            let mut dangling = false;
            for p in [&c.over, &c.under] {
                if !self.edges.contains_key(&p.edge) {
                    let v = Violation::DanglingEdge {
                        crossing: c.id.clone(),
                        edge: p.edge.clone(),
                    };
                    if !out.contains(&v) {
                        out.push(v);
                    }
                    dangling = true;
                }
            }
            if c.over == c.under {
                out.push(Violation::SamePassage {
                    crossing: c.id.clone(),
                    passage: c.over.clone(),
                });
            }
            if dangling {
                continue;
            }
            let refs: &[&Passage] = if c.over == c.under {
                &[&c.over]
            } else {
                &[&c.over, &c.under]
            };
            for p in refs {
                *used.entry(&p.edge).or_default().entry(p.index).or_default() += 1;
            }
        }
        for (edge, indices) in used {
            for (&index, &n) in &indices {
                if n > 1 {
                    out.push(Violation::DuplicatePassage {
                        edge: edge.clone(),
                        index,
                    });
                }
            }
            let max = *indices.keys().next_back().expect("nonempty");
            for missing in 0..max {
                if !indices.contains_key(&missing) {
                    out.push(Violation::PassageGap {
                        edge: edge.clone(),
                        missing,
                    });
                }
            }
        }
        out
    }

    /// [`Diagram::validate`] plus the two-component requirement.
    pub fn validate_two_component(&self) -> Vec<Violation> {
        let mut out = self.validate();
        if out.is_empty() {
            let found = self.components().len();
            if found != 2 {
                out.push(Violation::ComponentCount { found });
            }
        }
        out
    }

    /// Connected components of the abstract graph, sorted by their
    /// smallest vertex identifier. Edges with dangling endpoints are
    /// ignored.
    pub fn components(&self) -> Vec<Component> {
        let index: BTreeMap<&Ident, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut parent: Vec<usize> = (0..index.len()).collect();

        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }

        for e in self.edges.values() {
            if let (Some(&a), Some(&b)) = (index.get(&e.tail), index.get(&e.head)) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    // Keep the smaller index as root so roots follow vertex order.
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    parent[hi] = lo;
                }
            }
        }

        let mut by_root: BTreeMap<usize, Component> = BTreeMap::new();
        for (v, &i) in &index {
            let r = find(&mut parent, i);
            by_root
                .entry(r)
                .or_insert_with(|| Component {
                    vertices: Vec::new(),
                    edges: Vec::new(),
                })
                .vertices
                .push((*v).clone());
        }
        for e in self.edges.values() {
            if let Some(&t) = index.get(&e.tail) {
                if index.contains_key(&e.head) {
                    let r = find(&mut parent, t);
                    by_root
                        .get_mut(&r)
                        .expect("root exists")
                        .edges
                        .push(e.id.clone());
                }
            }
        }
        // Vertices were visited in ascending order and the root is the
        // smallest member, so BTreeMap order on roots is the required order.
        by_root.into_values().collect()
    }

    /// Index of the component containing edge `e`.
    pub fn component_of_edge(components: &[Component], e: &Ident) -> Option<usize> {
        components.iter().position(|c| c.contains_edge(e))
    }
}
