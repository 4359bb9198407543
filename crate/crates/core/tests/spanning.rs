use twoec_core::fixtures;
use twoec_core::{analyze_flow, dominator_tree, edge_disjoint_pair, independent_pair, verify_independent, FlowGraph};

fn reaches_all(g: &twoec_core::Digraph, s: usize) -> bool {
    FlowGraph::new(g, s).is_ok()
}

#[test]
fn thousand_random_independent_pairs() {
    for seed in 0..1000u64 {
        let n = 2 + seed as usize % 49;
        let g = fixtures::random_strongly_connected(n, n + (seed as usize * 7) % (3 * n), seed);
        let s = seed as usize % n;
        let fg = FlowGraph::new(&g, s).unwrap();
        let dt = dominator_tree(fg);
        let pair = independent_pair(fg, &dt);
        assert!(verify_independent(fg, &pair, &dt), "seed {seed}");
        assert!(pair.union().len() <= 2 * (n - 1));
        let (_, br) = analyze_flow(&g, s).unwrap();
        assert_eq!(pair.common(), br.edges);
        assert_eq!(edge_disjoint_pair(fg).common(), br.edges);
    }
}

#[test]
fn union_survives_any_non_bridge_deletion() {
    for seed in 0..200u64 {
        let n = 2 + seed as usize % 11;
        let g = fixtures::random_strongly_connected(n, 2 * n, seed);
        let fg = FlowGraph::new(&g, 0).unwrap();
        let pair = edge_disjoint_pair(fg);
        let (_, br) = analyze_flow(&g, 0).unwrap();
        let union = g.restrict_to(&pair.union()).unwrap();
        for e in union.edge_ids() {
            if !br.contains(e) {
                assert!(reaches_all(&union.without_edge(e).unwrap(), 0), "seed {seed} edge {e}");
            }
        }
    }
}

#[test]
fn pairs_are_deterministic() {
    let g = fixtures::random_strongly_connected(40, 120, 77);
    let fg = FlowGraph::new(&g, 3).unwrap();
    let dt = dominator_tree(fg);
    assert_eq!(independent_pair(fg, &dt), independent_pair(fg, &dt));
}
