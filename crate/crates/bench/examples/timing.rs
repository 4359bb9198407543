//! Prints size, quality ratio and time of every algorithm on a synthetic road network.
//!
//! Usage: `cargo run --release -p twoec-bench --example timing [side] [seed]`

use twoec_core::{Algorithm, DatasetSummary, RunOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let side: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(58);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let g = twoec_bench::road_like(side, seed);
    let ds = DatasetSummary::new("road", &g).expect("strongly connected");
    println!(
        "n={} m={} b*={} lbB={:.3} lbC={:.3}",
        g.n(),
        g.m(),
        ds.bstar,
        ds.lower_bound(twoec_core::Problem::B),
        ds.lower_bound(twoec_core::Problem::C)
    );
    for a in Algorithm::ALL {
        let r = ds.measure(a, &RunOptions::default(), 1).expect("run");
        println!("{:<16} edges={:<6} q={:.3} {:.3}s", r.algorithm, r.edges_out, r.q, r.seconds);
    }
}
