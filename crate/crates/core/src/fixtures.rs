//! Shared test graphs and seeded random generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Digraph, VertexId};

/// Bidirected triangle.
pub fn g1() -> Digraph {
    Digraph::build(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)], false).unwrap()
}

/// Directed 3-cycle.
pub fn g2() -> Digraph {
    Digraph::build(3, &[(0, 1), (1, 2), (2, 0)], false).unwrap()
}

/// Six-cycle a..f (0..5) with chords c->a and f->d.
pub fn g4() -> Digraph {
    Digraph::build(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (2, 0), (5, 3)], false).unwrap()
}

/// u=0, v=1 joined by two disjoint two-edge paths in each direction through a=2, b=3, c=4, d=5.
pub fn g5() -> Digraph {
    Digraph::build(6, &[(0, 2), (2, 1), (0, 3), (3, 1), (1, 4), (4, 0), (1, 5), (5, 0)], false).unwrap()
}

pub fn bidirected_cycle(n: usize) -> Digraph {
    let mut e = Vec::new();
    for i in 0..n {
        e.push((i, (i + 1) % n));
        e.push(((i + 1) % n, i));
    }
    Digraph::build(n, &e, false).unwrap()
}

pub fn complete(n: usize) -> Digraph {
    let e: Vec<_> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    Digraph::build(n, &e, false).unwrap()
}

/// Two bidirected triangles {0,1,2} and {3,4,5} joined by 0->3, 1->4, 3->0, 4->1.
pub fn twin_triangles() -> Digraph {
    let mut e = g1().edges().map(|(_, u, v)| (u, v)).collect::<Vec<_>>();
    e.extend(g1().edges().map(|(_, u, v)| (u + 3, v + 3)));
    e.extend([(0, 3), (1, 4), (3, 0), (4, 1)]);
    Digraph::build(6, &e, false).unwrap()
}

/// Two bidirected triangles joined by a single edge each way (two 2EC components).
pub fn bridged_triangles() -> Digraph {
    let mut e = g1().edges().map(|(_, u, v)| (u, v)).collect::<Vec<_>>();
    e.extend(g1().edges().map(|(_, u, v)| (u + 3, v + 3)));
    e.extend([(0, 3), (4, 1)]);
    Digraph::build(6, &e, false).unwrap()
}

/// The canonical fixtures in one list.
pub fn all() -> Vec<Digraph> {
    vec![g1(), g2(), g4(), g5()]
}

/// A wider corpus: the fixtures plus a few structured graphs.
pub fn corpus() -> Vec<(String, Digraph)> {
    let mut out = vec![
        ("G1".to_string(), g1()),
        ("G2".to_string(), g2()),
        ("G4".to_string(), g4()),
        ("G5".to_string(), g5()),
        ("bicycle4".to_string(), bidirected_cycle(4)),
        ("K4".to_string(), complete(4)),
        ("twin-triangles".to_string(), twin_triangles()),
        ("bridged-triangles".to_string(), bridged_triangles()),
        ("gadget4".to_string(), crate::oracle::gadget_family(4).unwrap()),
    ];
    for (i, (n, m)) in [(12, 24), (20, 45), (30, 60), (40, 100)].into_iter().enumerate() {
        out.push((format!("random{i}"), random_strongly_connected(n, m, 1000 + i as u64)));
    }
    out
}

/// Seeded random strongly connected simple digraph with `n` vertices and
/// `min(m, n(n-1))` edges, at least enough for strong connectivity.
///
/// Built from a random ear decomposition, then padded with random edges.
pub fn random_strongly_connected(n: usize, m: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_sc_with(&mut rng, n, m)
}

pub fn random_sc_with(rng: &mut impl Rng, n: usize, m: usize) -> Digraph {
    assert!(n >= 1);
    if n == 1 {
        return Digraph::build(1, &[], false).unwrap();
    }
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    let mut present = std::collections::HashSet::new();
    let mut edges = Vec::new();
    let mut add = |u: VertexId, v: VertexId, edges: &mut Vec<(VertexId, VertexId)>| {
        if u != v && present.insert((u, v)) {
            edges.push((u, v));
        }
    };
    let first = rng.gen_range(2..=n.min(4));
    for i in 0..first {
        add(order[i], order[(i + 1) % first], &mut edges);
    }
    let mut covered = first;
    while covered < n {
        let len = rng.gen_range(1..=(n - covered).min(3));
        let u = order[rng.gen_range(0..covered)];
        let w = order[rng.gen_range(0..covered)];
        let mut prev = u;
        for k in 0..len {
            let x = order[covered + k];
            add(prev, x, &mut edges);
            prev = x;
        }
        add(prev, w, &mut edges);
        covered += len;
    }
    let target = m.min(n * (n - 1)).max(edges.len());
    while edges.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        add(u, v, &mut edges);
    }
    edges.shuffle(rng);
    Digraph::build(n, &edges, false).unwrap()
}

/// Random strongly connected multigraph: a simple one plus `extra` duplicated edges.
pub fn random_sc_multigraph(n: usize, m: usize, extra: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_sc_with(&mut rng, n, m);
    let mut edges: Vec<_> = g.edges().map(|(_, u, v)| (u, v)).collect();
    for _ in 0..extra.min(edges.len()) {
        let e = edges[rng.gen_range(0..edges.len())];
        edges.push(e);
    }
    Digraph::build(n, &edges, true).unwrap()
}

/// Random strongly connected graph with every vertex of in- and out-degree at least two
/// that is also 2-edge-connected (retries until it is).
pub fn random_two_edge_connected(n: usize, m: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g = random_sc_with(&mut rng, n, m.max(2 * n));
        if crate::dominators::strong_bridges(&g).map(|b| b.is_empty()).unwrap_or(false) {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_strongly_connected;

    #[test]
    fn generators_are_strongly_connected_and_seeded() {
        for seed in 0..200 {
            let n = 2 + (seed as usize % 9);
            let g = random_strongly_connected(n, 2 * n, seed);
            assert!(is_strongly_connected(&g));
            assert_eq!(g, random_strongly_connected(n, 2 * n, seed));
        }
    }
}
