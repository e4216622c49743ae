//! Seeded random diagrams for tests and benchmarks.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{id, Crossing, Diagram, Edge, Ident, Passage, Sign};

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_crossings: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_vertices: 6,
            max_edges: 10,
            max_crossings: 12,
        }
    }
}

fn random_token(rng: &mut ChaCha8Rng, prefix: char) -> String {
    const CHARS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
    let len = rng.random_range(0..4);
    let mut s = String::from(prefix);
    for _ in 0..len {
        s.push(CHARS[rng.random_range(0..CHARS.len())] as char);
    }
    s
}

/// Distinct identifiers with the given prefix.
fn distinct_ids(rng: &mut ChaCha8Rng, prefix: char, count: usize) -> Vec<Ident> {
    let mut out: Vec<Ident> = Vec::with_capacity(count);
    while out.len() < count {
        let s = format!("{}{}", random_token(rng, prefix), out.len());
        let cand = id(&s);
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

/// Adds `count` random crossings on the given edges, keeping passage
/// indices contiguous per edge.
fn add_crossings(rng: &mut ChaCha8Rng, edges: &[Ident], count: usize, mut d: Diagram) -> Diagram {
    if edges.is_empty() {
        return d;
    }
    // Per edge, the ordered list of (crossing slot, is_over).
    let mut strands: Vec<Vec<(usize, bool)>> = vec![Vec::new(); edges.len()];
    let mut ends: Vec<(usize, usize)> = Vec::with_capacity(count);
    for slot in 0..count {
        let a = rng.random_range(0..edges.len());
        let b = rng.random_range(0..edges.len());
        for (e, over) in [(a, true), (b, false)] {
            let pos = rng.random_range(0..=strands[e].len());
            strands[e].insert(pos, (slot, over));
        }
        ends.push((a, b));
    }
    let mut over_idx = vec![0; count];
    let mut under_idx = vec![0; count];
    for list in &strands {
        for (i, &(slot, over)) in list.iter().enumerate() {
            if over {
                over_idx[slot] = i;
            } else {
                under_idx[slot] = i;
            }
        }
    }
    let ids = distinct_ids(rng, 'x', count);
    for (slot, (a, b)) in ends.into_iter().enumerate() {
        let sign = if rng.random_bool(0.5) {
            Sign::Positive
        } else {
            Sign::Negative
        };
        let c = Crossing {
            id: ids[slot].clone(),
            over: Passage::new(edges[a].clone(), over_idx[slot]),
            under: Passage::new(edges[b].clone(), under_idx[slot]),
            sign,
        };
        d.crossings_mut().insert(c.id.clone(), c);
    }
    d
}

/// Arbitrary valid diagram: any number of components, loops and
/// multi-edges allowed, crossings anywhere. Not necessarily realizable.
pub fn random_diagram(seed: u64, shape: Shape) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = rng.random_range(0..=shape.max_vertices);
    let vertices = distinct_ids(&mut rng, 'v', nv);
    let ne = if nv == 0 {
        0
    } else {
        rng.random_range(0..=shape.max_edges)
    };
    let edge_ids = distinct_ids(&mut rng, 'e', ne);
    let edges: Vec<Edge> = edge_ids
        .iter()
        .map(|e| {
            let t = vertices[rng.random_range(0..nv)].clone();
            let h = vertices[rng.random_range(0..nv)].clone();
            Edge::new(e.clone(), t, h)
        })
        .collect();
    let nc = if ne == 0 {
        0
    } else {
        rng.random_range(0..=shape.max_crossings)
    };
    let d = Diagram::from_parts(vertices, edges, []).expect("distinct ids");
    let d = add_crossings(&mut rng, &edge_ids, nc, d);
    debug_assert!(d.validate().is_empty());
    d
}

/// Connected random graph on vertices `prefix0..`: a random tree plus
/// extra edges and loops.
fn connected_component(
    rng: &mut ChaCha8Rng,
    prefix: &str,
    max_vertices: usize,
    extra: usize,
) -> (Vec<Ident>, Vec<Edge>) {
    let nv = rng.random_range(1..=max_vertices.max(1));
    let vertices: Vec<Ident> = (0..nv).map(|i| id(&format!("{prefix}{i}"))).collect();
    let mut edges = Vec::new();
    let mut k = 0;
    let mut next_edge = |t: &Ident, h: &Ident, edges: &mut Vec<Edge>| {
        let e = Edge::new(id(&format!("{prefix}e{k}")), t.clone(), h.clone());
        k += 1;
        edges.push(e);
    };
    for i in 1..nv {
        let j = rng.random_range(0..i);
        let (t, h) = if rng.random_bool(0.5) { (i, j) } else { (j, i) };
        next_edge(&vertices[t], &vertices[h], &mut edges);
    }
    for _ in 0..rng.random_range(0..=extra) {
        let t = rng.random_range(0..nv);
        let h = rng.random_range(0..nv);
        next_edge(&vertices[t], &vertices[h], &mut edges);
    }
    (vertices, edges)
}

/// Random diagram with exactly two connected components (vertex prefixes
/// `a` and `b`, so `a` is component 0) and random crossings between any
/// edges.
pub fn random_two_component(seed: u64, shape: Shape) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = (shape.max_vertices / 2).max(1);
    let extra = shape.max_edges / 2;
    let (va, ea) = connected_component(&mut rng, "a", half, extra);
    let (vb, eb) = connected_component(&mut rng, "b", half, extra);
    let edge_ids: Vec<Ident> = ea.iter().chain(&eb).map(|e| e.id.clone()).collect();
    let d = Diagram::from_parts(va.into_iter().chain(vb), ea.into_iter().chain(eb), [])
        .expect("distinct ids");
    let nc = rng.random_range(0..=shape.max_crossings);
    let d = add_crossings(&mut rng, &edge_ids, nc, d);
    debug_assert_eq!(d.components().len(), 2);
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_diagrams_are_valid() {
        for seed in 0..200 {
            let d = random_diagram(seed, Shape::default());
            assert!(d.validate().is_empty(), "seed {seed}");
            let d = random_two_component(seed, Shape::default());
            assert!(d.validate_two_component().is_empty(), "seed {seed}");
        }
    }

    #[test]
    fn generation_is_reproducible() {
        assert_eq!(
            random_diagram(3, Shape::default()),
            random_diagram(3, Shape::default())
        );
    }
}
