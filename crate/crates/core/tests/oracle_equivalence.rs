use proptest::prelude::*;
use twoec_core::fixtures;
use twoec_core::oracle::{oracle_blocks, oracle_components, oracle_strong_bridges, OracleBudget};
use twoec_core::{blocks, components, strong_bridges, Digraph};

fn agree(g: &Digraph) {
    let b = OracleBudget::default();
    assert_eq!(strong_bridges(g).unwrap(), oracle_strong_bridges(g), "strong bridges");
    assert_eq!(blocks(g).unwrap(), oracle_blocks(g, &b).unwrap(), "blocks");
    assert_eq!(components(g).unwrap(), oracle_components(g, &b).unwrap(), "components");
}

#[test]
fn fixtures_match_oracle() {
    for (name, g) in fixtures::corpus() {
        if g.n() <= 12 {
            eprintln!("{name}");
            agree(&g);
        }
    }
}

#[test]
fn random_simple_graphs_match_oracle() {
    for seed in 0..600u64 {
        let n = 2 + (seed as usize % 9);
        let m = (n + (seed as usize * 7) % (2 * n)).min(20);
        agree(&fixtures::random_strongly_connected(n, m, seed));
    }
}

#[test]
fn random_multigraphs_match_oracle() {
    for seed in 0..200u64 {
        let n = 2 + (seed as usize % 7);
        agree(&fixtures::random_sc_multigraph(n, n + 3, 3, seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn blocks_refine_components(n in 2usize..10, extra in 0usize..12, seed in any::<u64>()) {
        let g = fixtures::random_strongly_connected(n, n + extra, seed);
        let bl = blocks(&g).unwrap();
        let co = components(&g).unwrap();
        for u in 0..n {
            for v in 0..n {
                if co.same(u, v) {
                    prop_assert!(bl.same(u, v));
                }
            }
        }
    }

    #[test]
    fn strong_bridge_removal_disconnects(n in 2usize..12, extra in 0usize..15, seed in any::<u64>()) {
        let g = fixtures::random_strongly_connected(n, n + extra, seed);
        let sb = strong_bridges(&g).unwrap();
        for e in g.edge_ids() {
            let sc = twoec_core::is_strongly_connected(&g.without_edge(e).unwrap());
            prop_assert_eq!(sb.contains(&e), !sc);
        }
    }
}
