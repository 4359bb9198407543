//! Synthetic workloads for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twoec_core::{largest_scc, Digraph};

/// A grid street network: each of the `side × side` lattice links is present
/// with probability 3/4, two-way with probability 4/5 and one-way otherwise.
/// Returns the largest strongly connected piece (identity edge origins).
pub fn road_like(side: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |r: usize, c: usize| r * side + c;
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            let mut nbrs = Vec::with_capacity(2);
            if c + 1 < side {
                nbrs.push(id(r, c + 1));
            }
            if r + 1 < side {
                nbrs.push(id(r + 1, c));
            }
            for w in nbrs {
                if !rng.gen_bool(0.75) {
                    continue;
                }
                let v = id(r, c);
                if rng.gen_bool(0.8) {
                    edges.extend([(v, w), (w, v)]);
                } else if rng.gen_bool(0.5) {
                    edges.push((v, w));
                } else {
                    edges.push((w, v));
                }
            }
        }
    }
    let g = Digraph::build(side * side, &edges, false).expect("lattice edges are simple");
    let (scc, _) = largest_scc(&g);
    let pairs: Vec<_> = scc.edges().map(|(_, u, v)| (u, v)).collect();
    Digraph::build(scc.n(), &pairs, false).expect("induced subgraph is simple")
}

/// Named inputs used by the criterion benches.
pub fn workloads() -> Vec<(String, Digraph)> {
    vec![
        ("road-24".to_string(), road_like(24, 1)),
        ("road-40".to_string(), road_like(40, 2)),
        ("random-500".to_string(), twoec_core::fixtures::random_strongly_connected(500, 1500, 3)),
    ]
}
