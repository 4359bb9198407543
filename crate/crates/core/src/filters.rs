//! Greedy edge filters: try deleting edges one at a time and keep an edge
//! only when its removal would change what must be preserved.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certificates::{capped_condensed, ist_b, two_ecss_edt};
use crate::decomposition::{blocks, expand, first_level, second_level_all, BlockPartition};
use crate::error::{Error, Result};
use crate::graph::{is_strongly_connected, Digraph, EdgeId, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterMode {
    /// Preserve blocks.
    B,
    /// Preserve blocks and components.
    BC,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterStrategy {
    /// Delete `(x, y)` when two edge-disjoint `x -> y` paths remain.
    Test2Edp,
    /// Delete an edge when the block partition is unchanged without it.
    Test2Ecb,
    /// The path test for edges inside a block, the partition test otherwise.
    Hybrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrder {
    Input,
    Reverse,
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilterConfig {
    pub mode: FilterMode,
    pub strategy: FilterStrategy,
    pub order: EdgeOrder,
    pub use_trivial_skip: bool,
    /// Run the filter inside every second-level auxiliary graph.
    pub on_aux: bool,
    /// Start from a certificate instead of the whole graph.
    pub preprocess_certificate: bool,
}

impl FilterConfig {
    pub fn new(mode: FilterMode, strategy: FilterStrategy) -> FilterConfig {
        FilterConfig {
            mode,
            strategy,
            order: EdgeOrder::Input,
            use_trivial_skip: true,
            on_aux: false,
            preprocess_certificate: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeDecision {
    KeptTrivial,
    KeptBridge,
    KeptNeeded,
    Deleted,
}

/// Per-edge outcomes in the order the edges were examined.
pub type Decisions = Vec<(EdgeId, EdgeDecision)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilterReport {
    /// Surviving edges, sorted ids of the input graph.
    pub edges: Vec<EdgeId>,
    /// One entry per examined edge, in examination order (input ids).
    pub decisions: Decisions,
    pub kept_trivial: usize,
    pub kept_bridge: usize,
    pub kept_needed: usize,
    pub deleted: usize,
}

impl FilterReport {
    fn finish(edges: Vec<EdgeId>, decisions: Decisions) -> FilterReport {
        let count = |d| decisions.iter().filter(|x| x.1 == d).count();
        FilterReport {
            kept_trivial: count(EdgeDecision::KeptTrivial),
            kept_bridge: count(EdgeDecision::KeptBridge),
            kept_needed: count(EdgeDecision::KeptNeeded),
            deleted: count(EdgeDecision::Deleted),
            edges,
            decisions,
        }
    }
}

/// Whether `g` has two edge-disjoint `x -> y` paths (two augmenting searches).
pub fn two_edge_disjoint(g: &Digraph, x: VertexId, y: VertexId) -> bool {
    if x == y {
        return true;
    }
    let mut used = vec![false; g.edge_bound()];
    for _ in 0..2 {
        let mut prev: Vec<Option<(EdgeId, bool)>> = vec![None; g.n()];
        let mut seen = vec![false; g.n()];
        seen[x] = true;
        let mut q = VecDeque::from([x]);
        'bfs: while let Some(v) = q.pop_front() {
            for &e in g.out_edges(v) {
                let w = g.head(e);
                if !used[e] && !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((e, true));
                    if w == y {
                        break 'bfs;
                    }
                    q.push_back(w);
                }
            }
            for &e in g.in_edges(v) {
                let w = g.tail(e);
                if used[e] && !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((e, false));
                    q.push_back(w);
                }
            }
        }
        if !seen[y] {
            return false;
        }
        let mut v = y;
        while v != x {
            let (e, fwd) = prev[v].expect("search tree");
            used[e] = fwd;
            v = if fwd { g.tail(e) } else { g.head(e) };
        }
    }
    true
}

/// An edge whose deletion would certainly change the blocks of `g`:
/// its tail would drop below the out-degree its block needs, or its head
/// below the in-degree.
pub fn is_trivial_edge(g: &Digraph, e: EdgeId, bl: &BlockPartition) -> bool {
    let (x, y) = g.endpoints(e);
    let need = |v: VertexId| if bl.class_size(v) >= 2 { 2 } else { 1 };
    g.out_degree(x) <= need(x) || g.in_degree(y) <= need(y)
}

fn ordered(mut ids: Vec<EdgeId>, order: EdgeOrder) -> Vec<EdgeId> {
    match order {
        EdgeOrder::Input => {}
        EdgeOrder::Reverse => ids.reverse(),
        EdgeOrder::Random(seed) => ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
    }
    ids
}

/// Filters the live edges of `g`, preserving its blocks. Returns the
/// surviving ids and the per-edge log (ids of `g`).
fn filter_blocks(
    g: &Digraph,
    strategy: FilterStrategy,
    order: EdgeOrder,
    skip: bool,
) -> Result<(Vec<EdgeId>, Decisions)> {
    let reference = blocks(g)?;
    let mut alive = vec![false; g.edge_bound()];
    for e in g.edge_ids() {
        alive[e] = true;
    }
    let mut log = Vec::with_capacity(g.m());
    let mut cur = g.clone();
    for e in ordered(g.edge_ids().collect(), order) {
        if skip && is_trivial_edge(&cur, e, &reference) {
            log.push((e, EdgeDecision::KeptTrivial));
            continue;
        }
        let (x, y) = g.endpoints(e);
        let without = cur.without_edge(e)?;
        let use_paths = match strategy {
            FilterStrategy::Test2Edp => true,
            FilterStrategy::Test2Ecb => false,
            FilterStrategy::Hybrid => reference.same(x, y),
        };
        let decision = if use_paths {
            if two_edge_disjoint(&without, x, y) {
                EdgeDecision::Deleted
            } else {
                EdgeDecision::KeptNeeded
            }
        } else if !is_strongly_connected(&without) {
            EdgeDecision::KeptBridge
        } else if blocks(&without)? == reference {
            EdgeDecision::Deleted
        } else {
            EdgeDecision::KeptNeeded
        };
        if decision == EdgeDecision::Deleted {
            alive[e] = false;
            cur = without;
        }
        log.push((e, decision));
    }
    Ok(((0..alive.len()).filter(|&e| alive[e]).collect(), log))
}

/// Runs the block filter inside every second-level auxiliary graph of `g`.
/// An edge survives if some copy of it survives, or if it has no copy at all.
pub fn aux_variant_filter(
    g: &Digraph,
    strategy: FilterStrategy,
    order: EdgeOrder,
    skip: bool,
) -> Result<(Vec<EdgeId>, Decisions)> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    let mut appears = vec![false; g.edge_bound()];
    let mut kept = vec![false; g.edge_bound()];
    let mut log = Vec::new();
    if g.n() > 1 {
        let (_, _, _, firsts) = first_level(g, 0)?;
        for h in &firsts {
            for q in second_level_all(h) {
                let base = |e: EdgeId| h.parent_edge[q.parent_edge[e]];
                for e in q.graph.edge_ids() {
                    appears[base(e)] = true;
                }
                let (survivors, local_log) = filter_blocks(&q.graph, strategy, order, skip)?;
                for e in survivors {
                    kept[base(e)] = true;
                }
                log.extend(local_log.into_iter().map(|(e, d)| (base(e), d)));
            }
        }
    }
    let edges = g.edge_ids().filter(|&e| kept[e] || !appears[e]).collect();
    Ok((edges, log))
}

fn filter_b_ids(g: &Digraph, cfg: &FilterConfig) -> Result<(Vec<EdgeId>, Decisions)> {
    let start = if cfg.preprocess_certificate { g.restrict_to(&ist_b(g, 0)?.0)? } else { g.clone() };
    if cfg.on_aux {
        aux_variant_filter(&start, cfg.strategy, cfg.order, cfg.use_trivial_skip)
    } else {
        filter_blocks(&start, cfg.strategy, cfg.order, cfg.use_trivial_skip)
    }
}

/// Blocks and components: every component's certificate is minimized by
/// the path test, and the condensed graph is filtered for blocks.
pub fn filter_bc(g: &Digraph, cfg: &FilterConfig) -> Result<FilterReport> {
    let (h, comp) = capped_condensed(g, 2)?;
    let mut per = Vec::new();
    let mut log = Vec::new();
    for class in comp.classes() {
        if class.len() < 2 {
            continue;
        }
        let (sub, _) = g.induced(&class);
        let start = if cfg.preprocess_certificate { sub.restrict_to(&two_ecss_edt(&sub)?)? } else { sub.clone() };
        let (ids, local) = filter_blocks(&start, FilterStrategy::Test2Edp, cfg.order, cfg.use_trivial_skip)?;
        per.push(ids.iter().map(|&e| sub.origin(e)).collect::<Vec<_>>());
        log.extend(local.into_iter().map(|(e, d)| (sub.origin(e), d)));
    }
    let (ids, hlog) = filter_b_ids(&h, cfg)?;
    log.extend(hlog.into_iter().map(|(e, d)| (h.origin(e), d)));
    let out = expand(&h.restrict_to(&ids)?, g, &comp, &per)?;
    Ok(FilterReport::finish(out.edge_ids().collect(), log))
}

/// Runs the configured filter on a strongly connected graph.
pub fn filter(g: &Digraph, cfg: &FilterConfig) -> Result<FilterReport> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    match cfg.mode {
        FilterMode::B => {
            let (edges, log) = filter_b_ids(g, cfg)?;
            Ok(FilterReport::finish(edges, log))
        }
        FilterMode::BC => filter_bc(g, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cfg(strategy: FilterStrategy) -> FilterConfig {
        FilterConfig { preprocess_certificate: false, ..FilterConfig::new(FilterMode::B, strategy) }
    }

    #[test]
    fn disjoint_paths() {
        let g1 = fixtures::g1();
        assert!(two_edge_disjoint(&g1, 0, 1));
        assert!(!two_edge_disjoint(&g1.without_edge(0).unwrap(), 0, 1));
        assert!(!two_edge_disjoint(&fixtures::g2(), 0, 2));
        assert!(two_edge_disjoint(&fixtures::g5(), 0, 1));
    }

    #[test]
    fn trivial_edges() {
        for g in [fixtures::g1(), fixtures::g2()] {
            let bl = blocks(&g).unwrap();
            assert!(g.edge_ids().all(|e| is_trivial_edge(&g, e, &bl)));
        }
        let g4 = fixtures::g4();
        let bl = blocks(&g4).unwrap();
        assert!(!is_trivial_edge(&g4, 6, &bl));
    }

    #[test]
    fn filter_examples() {
        let k4 = filter(&fixtures::complete(4), &cfg(FilterStrategy::Test2Edp)).unwrap();
        assert_eq!(k4.edges.len(), 8);
        let g4 = filter(&fixtures::g4(), &cfg(FilterStrategy::Test2Ecb)).unwrap();
        assert_eq!(g4.edges, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(g4.kept_bridge + g4.kept_trivial, 6);
        for s in [FilterStrategy::Test2Edp, FilterStrategy::Test2Ecb, FilterStrategy::Hybrid] {
            assert_eq!(filter(&fixtures::g5(), &cfg(s)).unwrap().edges.len(), 8);
        }
    }

    #[test]
    fn report_counts_match_log() {
        let g = fixtures::random_strongly_connected(15, 45, 3);
        let r = filter(&g, &cfg(FilterStrategy::Hybrid)).unwrap();
        assert_eq!(r.decisions.len(), g.m());
        assert_eq!(r.deleted, g.m() - r.edges.len());
        assert_eq!(r.kept_trivial + r.kept_bridge + r.kept_needed, r.edges.len());
    }
}
