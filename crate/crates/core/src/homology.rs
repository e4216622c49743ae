//! Spanning trees and fundamental cycle bases of H1 for each component.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::diagram::{Component, Diagram, Ident};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("no component with index {index} (diagram has {count})")]
    NoSuchComponent { index: usize, count: usize },
}

/// Integer 1-chain on the edges of one component. Absent edges have
/// coefficient zero; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cycle {
    /// Zero-based component index in [`Diagram::components`] order.
    pub component: usize,
    coeffs: BTreeMap<Ident, i64>,
}

impl Cycle {
    pub fn new(component: usize) -> Self {
        Cycle {
            component,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(component: usize, coeffs: impl IntoIterator<Item = (Ident, i64)>) -> Self {
        let mut c = Cycle::new(component);
        for (e, k) in coeffs {
            c.add(&e, k);
        }
        c
    }

    pub fn coeff(&self, e: &Ident) -> i64 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn add(&mut self, e: &Ident, k: i64) {
        let v = self.coeff(e) + k;
        if v == 0 {
            self.coeffs.remove(e);
        } else {
            self.coeffs.insert(e.clone(), v);
        }
    }

    /// Nonzero coefficients in ascending edge order.
    pub fn support(&self) -> impl Iterator<Item = (&Ident, i64)> + '_ {
        self.coeffs.iter().map(|(e, &k)| (e, k))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `self + k * other`, keeping this cycle's component label.
    pub fn plus_multiple(&self, other: &Cycle, k: i64) -> Cycle {
        let mut out = self.clone();
        for (e, c) in other.support() {
            out.add(e, k * c);
        }
        out
    }

    pub fn negated(&self) -> Cycle {
        Cycle::new(self.component).plus_multiple(self, -1)
    }

    /// Signed incidence sum at every vertex: +1 at the head, -1 at the
    /// tail, loops contribute nothing. Empty iff the chain is a cycle.
    pub fn boundary(&self, d: &Diagram) -> BTreeMap<Ident, i64> {
        let mut out: BTreeMap<Ident, i64> = BTreeMap::new();
        for (e, k) in self.support() {
            let Some(edge) = d.edge(e) else { continue };
            if edge.is_loop() {
                continue;
            }
            *out.entry(edge.head.clone()).or_default() += k;
            *out.entry(edge.tail.clone()).or_default() -= k;
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    pub component: usize,
    /// Tree edges in the order BFS discovered them.
    pub tree_edges: Vec<Ident>,
    /// Non-tree edges in ascending order; `cycles[k]` is defined by
    /// `defining_edges[k]`.
    pub defining_edges: Vec<Ident>,
    pub cycles: Vec<Cycle>,
}

fn component(d: &Diagram, index: usize) -> Result<Component, HomologyError> {
    let mut comps = d.components();
    let count = comps.len();
    if index >= count {
        return Err(HomologyError::NoSuchComponent { index, count });
    }
    Ok(comps.swap_remove(index))
}

/// Parent links of a BFS spanning tree: vertex -> (edge, parent vertex).
struct Bfs {
    order: Vec<Ident>,
    parent: BTreeMap<Ident, (Ident, Ident)>,
}

/// BFS from the smallest vertex; at each vertex, incident edges are
/// explored in ascending edge-id order. Loops are skipped.
fn bfs(d: &Diagram, comp: &Component) -> Bfs {
    let mut incident: BTreeMap<&Ident, Vec<&Ident>> = BTreeMap::new();
    for e in &comp.edges {
        let edge = d.edge(e).expect("component edge exists");
        if edge.is_loop() {
            continue;
        }
        incident.entry(&edge.tail).or_default().push(e);
        incident.entry(&edge.head).or_default().push(e);
    }
    for list in incident.values_mut() {
        list.sort();
        list.dedup();
    }

    let mut order = Vec::new();
    let mut parent = BTreeMap::new();
    let Some(root) = comp.vertices.first() else {
        return Bfs { order, parent };
    };
    let mut seen = std::collections::BTreeSet::from([root.clone()]);
    let mut queue = VecDeque::from([root.clone()]);
    while let Some(v) = queue.pop_front() {
        for e in incident.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            let edge = d.edge(e).expect("edge exists");
            let w = if edge.tail == v {
                &edge.head
            } else {
                &edge.tail
            };
            if seen.insert(w.clone()) {
                order.push((*e).clone());
                parent.insert(w.clone(), ((*e).clone(), v.clone()));
                queue.push_back(w.clone());
            }
        }
    }
    Bfs { order, parent }
}

/// Deterministic spanning tree of component `index`, in discovery order.
pub fn spanning_tree(d: &Diagram, index: usize) -> Result<Vec<Ident>, HomologyError> {
    let comp = component(d, index)?;
    Ok(bfs(d, &comp).order)
}

/// Signed tree path from the root to `v`.
fn root_path(d: &Diagram, tree: &Bfs, v: &Ident, component: usize) -> Cycle {
    let mut chain = Cycle::new(component);
    let mut cur = v.clone();
    while let Some((e, p)) = tree.parent.get(&cur) {
        let edge = d.edge(e).expect("edge exists");
        // Root-to-v direction crosses e from p to cur.
        let k = if edge.tail == *p { 1 } else { -1 };
        chain.add(e, k);
        cur = p.clone();
    }
    chain
}

/// Fundamental cycle basis for component `index`: one cycle per non-tree
/// edge, in ascending edge order. Each cycle is the edge (tail to head)
/// closed up by the tree path from its head back to its tail.
pub fn cycle_basis(d: &Diagram, index: usize) -> Result<CycleBasis, HomologyError> {
    let comp = component(d, index)?;
    let tree = bfs(d, &comp);
    cycle_basis_with_tree(d, index, &comp, tree.order.clone(), |v| {
        root_path(d, &tree, v, index)
    })
}

fn cycle_basis_with_tree(
    d: &Diagram,
    index: usize,
    comp: &Component,
    tree_edges: Vec<Ident>,
    root_path: impl Fn(&Ident) -> Cycle,
) -> Result<CycleBasis, HomologyError> {
    let in_tree: std::collections::BTreeSet<&Ident> = tree_edges.iter().collect();
    let mut defining_edges = Vec::new();
    let mut cycles = Vec::new();
    for e in &comp.edges {
        if in_tree.contains(e) {
            continue;
        }
        let edge = d.edge(e).expect("edge exists");
        // e + path(head -> tail) = e + root_path(tail) - root_path(head)
        let c = Cycle::from_coeffs(index, [(e.clone(), 1)])
            .plus_multiple(&root_path(&edge.tail), 1)
            .plus_multiple(&root_path(&edge.head), -1);
        defining_edges.push(e.clone());
        cycles.push(c);
    }
    Ok(CycleBasis {
        component: index,
        tree_edges,
        defining_edges,
        cycles,
    })
}

/// First Betti number of component `index`.
pub fn rank(d: &Diagram, index: usize) -> Result<usize, HomologyError> {
    Ok(component(d, index)?.rank())
}

/// Fundamental basis with respect to a seeded random spanning tree
/// (random edge priority, Kruskal). Used to check basis independence.
pub fn cycle_basis_random_tree(
    d: &Diagram,
    index: usize,
    seed: u64,
) -> Result<CycleBasis, HomologyError> {
    use rand::seq::{IndexedRandom, SliceRandom};
    use rand::SeedableRng;

    let comp = component(d, index)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut edges = comp.edges.clone();
    edges.shuffle(&mut rng);

    let mut uf: BTreeMap<Ident, Ident> = comp
        .vertices
        .iter()
        .map(|v| (v.clone(), v.clone()))
        .collect();
    fn find(uf: &mut BTreeMap<Ident, Ident>, v: &Ident) -> Ident {
        let p = uf[v].clone();
        if &p == v {
            return p;
        }
        let r = find(uf, &p);
        uf.insert(v.clone(), r.clone());
        r
    }
    let mut adj: BTreeMap<Ident, Vec<(Ident, Ident)>> = BTreeMap::new();
    let mut tree_edges = Vec::new();
    for e in edges {
        let edge = d.edge(&e).expect("edge exists");
        let (a, b) = (find(&mut uf, &edge.tail), find(&mut uf, &edge.head));
        if a != b {
            uf.insert(a, b);
            adj.entry(edge.tail.clone())
                .or_default()
                .push((e.clone(), edge.head.clone()));
            adj.entry(edge.head.clone())
                .or_default()
                .push((e.clone(), edge.tail.clone()));
            tree_edges.push(e);
        }
    }

    // Root the tree at a random vertex.
    let root = comp.vertices.choose(&mut rng).cloned();
    let mut parent: BTreeMap<Ident, (Ident, Ident)> = BTreeMap::new();
    if let Some(root) = root {
        let mut stack = vec![root.clone()];
        let mut seen = std::collections::BTreeSet::from([root]);
        while let Some(v) = stack.pop() {
            for (e, w) in adj.get(&v).cloned().unwrap_or_default() {
                if seen.insert(w.clone()) {
                    parent.insert(w.clone(), (e, v.clone()));
                    stack.push(w);
                }
            }
        }
    }
    let tree = Bfs {
        order: tree_edges.clone(),
        parent,
    };
    cycle_basis_with_tree(d, index, &comp, tree_edges, |v| {
        root_path(d, &tree, v, index)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{id, Edge};

    fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> Diagram {
        Diagram::from_parts(
            vs.iter().map(|v| id(v)),
            es.iter().map(|(e, t, h)| Edge::new(id(e), id(t), id(h))),
            [],
        )
        .unwrap()
    }

    fn triangle() -> Diagram {
        graph(
            &["a", "b", "c"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")],
        )
    }

    #[test]
    fn bouquet_has_empty_tree_and_loop_cycles() {
        let d = graph(&["v"], &[("l1", "v", "v"), ("l2", "v", "v")]);
        assert!(spanning_tree(&d, 0).unwrap().is_empty());
        let b = cycle_basis(&d, 0).unwrap();
        assert_eq!(
            b.cycles,
            vec![
                Cycle::from_coeffs(0, [(id("l1"), 1)]),
                Cycle::from_coeffs(0, [(id("l2"), 1)]),
            ]
        );
        assert_eq!(rank(&d, 0).unwrap(), 2);
    }

    #[test]
    fn triangle_tree_and_cycle() {
        let d = triangle();
        assert_eq!(spanning_tree(&d, 0).unwrap(), vec![id("e1"), id("e3")]);
        let b = cycle_basis(&d, 0).unwrap();
        // e2 runs b->c; closing path c->a->b is e3 forward then e1 forward.
        assert_eq!(
            b.cycles,
            vec![Cycle::from_coeffs(
                0,
                [(id("e1"), 1), (id("e2"), 1), (id("e3"), 1)]
            )]
        );
        assert!(b.cycles[0].boundary(&d).is_empty());
        assert_eq!(rank(&d, 0).unwrap(), 1);
    }

    #[test]
    fn orientation_signs_follow_traversal() {
        // Same triangle with e3 reversed (a->c).
        let d = graph(
            &["a", "b", "c"],
            &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "a", "c")],
        );
        let b = cycle_basis(&d, 0).unwrap();
        assert_eq!(
            b.cycles,
            vec![Cycle::from_coeffs(
                0,
                [(id("e1"), 1), (id("e2"), 1), (id("e3"), -1)]
            )]
        );
    }

    #[test]
    fn path_graph_is_its_own_tree() {
        let d = graph(
            &["a", "b", "c", "d"],
            &[("p1", "a", "b"), ("p2", "c", "b"), ("p3", "c", "d")],
        );
        assert_eq!(
            spanning_tree(&d, 0).unwrap(),
            vec![id("p1"), id("p2"), id("p3")]
        );
        assert!(cycle_basis(&d, 0).unwrap().cycles.is_empty());
        assert_eq!(rank(&d, 0).unwrap(), 0);
    }

    #[test]
    fn theta_graph_rank_two() {
        let d = graph(
            &["a", "b"],
            &[("t1", "a", "b"), ("t2", "a", "b"), ("t3", "b", "a")],
        );
        assert_eq!(rank(&d, 0).unwrap(), 2);
        let b = cycle_basis(&d, 0).unwrap();
        assert_eq!(b.defining_edges, vec![id("t2"), id("t3")]);
        assert_eq!(
            b.cycles[1],
            Cycle::from_coeffs(0, [(id("t1"), 1), (id("t3"), 1)])
        );
        for c in &b.cycles {
            assert!(c.boundary(&d).is_empty());
        }
    }

    #[test]
    fn missing_component() {
        let d = triangle();
        assert_eq!(
            rank(&d, 1),
            Err(HomologyError::NoSuchComponent { index: 1, count: 1 })
        );
        assert!(cycle_basis(&d, 3).is_err());
        assert!(spanning_tree(&Diagram::new(), 0).is_err());
    }

    #[test]
    fn random_tree_basis_is_still_fundamental() {
        let d = graph(
            &["a", "b", "c", "d"],
            &[
                ("e1", "a", "b"),
                ("e2", "b", "c"),
                ("e3", "c", "a"),
                ("e4", "c", "d"),
                ("e5", "d", "a"),
                ("e6", "b", "b"),
            ],
        );
        for seed in 0..20 {
            let b = cycle_basis_random_tree(&d, 0, seed).unwrap();
            assert_eq!(b.cycles.len(), 3);
            assert_eq!(b.tree_edges.len(), 3);
            for (k, c) in b.cycles.iter().enumerate() {
                assert!(c.boundary(&d).is_empty());
                for (j, e) in b.defining_edges.iter().enumerate() {
                    assert_eq!(c.coeff(e), i64::from(j == k));
                }
            }
        }
    }
}
