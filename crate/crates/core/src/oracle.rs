//! Brute-force ground truth for small graphs.
//!
//! Everything here is deliberately independent of the fast algorithms: flows
//! are plain augmenting paths, connectivity is BFS from scratch, and
//! components come from enumerating vertex subsets.

use std::collections::VecDeque;

use crate::decomposition::Partition;
use crate::error::{Error, Result};
use crate::graph::{Digraph, EdgeId, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest n for exhaustive edge-subset search.
    pub max_subset_n: usize,
    /// Largest m for exhaustive edge-subset search.
    pub max_subset_m: usize,
    /// Largest n for pairwise-flow partitions and vertex-subset enumeration.
    pub max_flow_n: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_subset_n: 8, max_subset_m: 20, max_flow_n: 12 }
    }
}

/// Maximum number of edge-disjoint `x -> y` paths, stopping once `limit` is reached.
pub fn max_edge_disjoint_paths(g: &Digraph, x: VertexId, y: VertexId, limit: usize) -> usize {
    if x == y {
        return limit;
    }
    let mut used = vec![false; g.edge_bound()];
    let mut flow = 0;
    while flow < limit {
        // BFS in the residual graph: forward along unused edges, backward along used ones.
        let mut prev: Vec<Option<(EdgeId, bool)>> = vec![None; g.n()];
        let mut seen = vec![false; g.n()];
        seen[x] = true;
        let mut q = VecDeque::from([x]);
        while let Some(v) = q.pop_front() {
            if v == y {
                break;
            }
            for &e in g.out_edges(v) {
                let w = g.head(e);
                if !used[e] && !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((e, true));
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
            break;
        }
        let mut v = y;
        while v != x {
            let (e, fwd) = prev[v].unwrap();
            used[e] = fwd;
            v = if fwd { g.tail(e) } else { g.head(e) };
        }
        flow += 1;
    }
    flow
}

fn bfs(g: &Digraph, s: VertexId, forward: bool) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        let adj = if forward { g.out_edges(v) } else { g.in_edges(v) };
        for &e in adj {
            let w = if forward { g.head(e) } else { g.tail(e) };
            if !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    seen
}

/// Strong connectivity by forward and backward search from vertex 0.
pub fn oracle_strongly_connected(g: &Digraph) -> bool {
    g.n() <= 1 || (bfs(g, 0, true).iter().all(|&b| b) && bfs(g, 0, false).iter().all(|&b| b))
}

/// Edges whose removal breaks strong connectivity, by trying each one.
pub fn oracle_strong_bridges(g: &Digraph) -> Vec<EdgeId> {
    g.edge_ids().filter(|&e| !oracle_strongly_connected(&g.restrict(|f| f != e))).collect()
}

/// Vertex `u` dominates `w` from `s` iff `w` is unreachable once `u` is removed.
pub fn oracle_dominates(g: &Digraph, s: VertexId, u: VertexId, w: VertexId) -> bool {
    if u == w || u == s {
        return true;
    }
    let h = g.restrict(|e| g.tail(e) != u && g.head(e) != u);
    !bfs(&h, s, true)[w]
}

fn check_flow_budget(g: &Digraph, budget: &OracleBudget) -> Result<()> {
    if g.n() > budget.max_flow_n {
        return Err(Error::BudgetExceeded(format!("n = {} > {}", g.n(), budget.max_flow_n)));
    }
    Ok(())
}

/// Blocks from pairwise flow checks (two edge-disjoint paths both ways).
#[allow(clippy::needless_range_loop)]
pub fn oracle_blocks(g: &Digraph, budget: &OracleBudget) -> Result<Partition> {
    check_flow_budget(g, budget)?;
    if !oracle_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    let n = g.n();
    let mut rel = vec![vec![false; n]; n];
    for u in 0..n {
        rel[u][u] = true;
        for v in u + 1..n {
            let r = max_edge_disjoint_paths(g, u, v, 2) >= 2 && max_edge_disjoint_paths(g, v, u, 2) >= 2;
            rel[u][v] = r;
            rel[v][u] = r;
        }
    }
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                assert!(!(rel[u][v] && rel[v][w]) || rel[u][w], "2-edge-connectivity is not transitive");
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|v| (0..n).find(|&u| rel[u][v]).unwrap()).collect();
    Ok(Partition::from_labels(&labels))
}

/// A graph is 2-edge-connected when it is strongly connected with no strong bridge.
pub fn oracle_two_edge_connected(g: &Digraph) -> bool {
    oracle_strongly_connected(g) && (g.n() <= 1 || oracle_strong_bridges(g).is_empty())
}

/// Components as the maximal vertex sets inducing a 2-edge-connected subgraph.
pub fn oracle_components(g: &Digraph, budget: &OracleBudget) -> Result<Partition> {
    check_flow_budget(g, budget)?;
    if !oracle_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    let n = g.n();
    let mut good: Vec<u32> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let verts: Vec<VertexId> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let (sub, _) = g.induced(&verts);
        if oracle_two_edge_connected(&sub) {
            good.push(mask);
        }
    }
    let maximal: Vec<u32> = good.iter().copied().filter(|&a| !good.iter().any(|&b| b != a && a & b == a)).collect();
    let mut labels: Vec<usize> = (0..n).map(|v| n + v).collect();
    for (i, &m) in maximal.iter().enumerate() {
        for (v, label) in labels.iter_mut().enumerate() {
            if m >> v & 1 == 1 {
                assert!(*label >= n, "maximal 2-edge-connected subgraphs overlap");
                *label = i;
            }
        }
    }
    Ok(Partition::from_labels(&labels))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Requirement {
    Scss,
    TwoEcss,
    Blocks,
    Components,
    BlocksComponents,
}

/// Reference data of the input graph against which subgraphs are judged.
pub struct Reference {
    pub requirement: Requirement,
    pub blocks: Partition,
    pub components: Partition,
}

impl Reference {
    pub fn new(g: &Digraph, requirement: Requirement, budget: &OracleBudget) -> Result<Reference> {
        Ok(Reference { requirement, blocks: oracle_blocks(g, budget)?, components: oracle_components(g, budget)? })
    }

    /// Minimum in- and out-degree each vertex needs in any valid subgraph.
    fn required_degree(&self, v: VertexId) -> usize {
        let n = self.blocks.id.len();
        match self.requirement {
            Requirement::Scss => usize::from(n > 1),
            Requirement::TwoEcss => 2 * usize::from(n > 1),
            Requirement::Blocks => 1 + usize::from(self.blocks.class_size(v) >= 2),
            Requirement::Components => 1 + usize::from(self.components.class_size(v) >= 2),
            Requirement::BlocksComponents => {
                1 + usize::from(self.blocks.class_size(v) >= 2 || self.components.class_size(v) >= 2)
            }
        }
    }

    pub fn satisfied_by(&self, sub: &Digraph, budget: &OracleBudget) -> bool {
        if !oracle_strongly_connected(sub) {
            return false;
        }
        let blocks_ok = || oracle_blocks(sub, budget).map(|b| b == self.blocks).unwrap_or(false);
        let comps_ok = || oracle_components(sub, budget).map(|c| c == self.components).unwrap_or(false);
        match self.requirement {
            Requirement::Scss => true,
            Requirement::TwoEcss => oracle_two_edge_connected(sub),
            Requirement::Blocks => blocks_ok(),
            Requirement::Components => comps_ok(),
            Requirement::BlocksComponents => blocks_ok() && comps_ok(),
        }
    }
}

/// Smallest edge subset meeting the requirement, found by increasing-size
/// enumeration with degree pruning. Among minimum subsets the
/// lexicographically smallest id list is returned.
pub fn oracle_min_subgraph(
    g: &Digraph,
    requirement: Requirement,
    budget: &OracleBudget,
) -> Result<(usize, Vec<EdgeId>)> {
    if g.n() > budget.max_subset_n || g.m() > budget.max_subset_m {
        return Err(Error::BudgetExceeded(format!("n = {}, m = {}", g.n(), g.m())));
    }
    let reference = Reference::new(g, requirement, budget)?;
    if requirement == Requirement::TwoEcss && !oracle_two_edge_connected(g) {
        return Err(Error::HasStrongBridge(oracle_strong_bridges(g)[0]));
    }
    let need: Vec<usize> = (0..g.n()).map(|v| reference.required_degree(v)).collect();
    let lower = need.iter().sum::<usize>();
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    for k in lower..=ids.len() {
        let mut search = Search {
            g,
            ids: &ids,
            need: &need,
            indeg: vec![0; g.n()],
            outdeg: vec![0; g.n()],
            rest_in: (0..g.n()).map(|v| g.in_degree(v)).collect(),
            rest_out: (0..g.n()).map(|v| g.out_degree(v)).collect(),
            chosen: Vec::with_capacity(k),
            k,
            accept: &|sub: &Digraph| reference.satisfied_by(sub, budget),
        };
        if search.run(0) {
            return Ok((k, search.chosen));
        }
    }
    Err(Error::BudgetExceeded("no subgraph satisfies the requirement".into()))
}

struct Search<'a> {
    g: &'a Digraph,
    ids: &'a [EdgeId],
    need: &'a [usize],
    indeg: Vec<usize>,
    outdeg: Vec<usize>,
    rest_in: Vec<usize>,
    rest_out: Vec<usize>,
    chosen: Vec<EdgeId>,
    k: usize,
    accept: &'a dyn Fn(&Digraph) -> bool,
}

impl Search<'_> {
    fn feasible(&self, v: VertexId) -> bool {
        self.indeg[v] + self.rest_in[v] >= self.need[v] && self.outdeg[v] + self.rest_out[v] >= self.need[v]
    }

    fn run(&mut self, i: usize) -> bool {
        if self.chosen.len() == self.k {
            if (0..self.g.n()).any(|v| self.indeg[v] < self.need[v] || self.outdeg[v] < self.need[v]) {
                return false;
            }
            let sub = self.g.restrict_to(&self.chosen).expect("live ids");
            return (self.accept)(&sub);
        }
        if i == self.ids.len() || self.ids.len() - i < self.k - self.chosen.len() {
            return false;
        }
        let e = self.ids[i];
        let (u, v) = self.g.endpoints(e);
        self.rest_out[u] -= 1;
        self.rest_in[v] -= 1;
        // Include first so that the first hit is lexicographically smallest.
        self.chosen.push(e);
        self.outdeg[u] += 1;
        self.indeg[v] += 1;
        if self.run(i + 1) {
            return true;
        }
        self.chosen.pop();
        self.outdeg[u] -= 1;
        self.indeg[v] -= 1;
        let ok = self.feasible(u) && self.feasible(v) && self.run(i + 1);
        self.rest_out[u] += 1;
        self.rest_in[v] += 1;
        ok
    }
}

/// True when `sub` meets the requirement and no single edge can be dropped.
pub fn oracle_is_minimal(g: &Digraph, sub: &[EdgeId], requirement: Requirement, budget: &OracleBudget) -> Result<bool> {
    let reference = Reference::new(g, requirement, budget)?;
    let h = g.restrict_to(sub)?;
    if !reference.satisfied_by(&h, budget) {
        return Ok(false);
    }
    Ok(sub.iter().all(|&e| !reference.satisfied_by(&h.restrict(|f| f != e), budget)))
}

/// A family with `n = k + 4` vertices and `m = 6n - 21` edges whose only
/// nontrivial block `{x_1..x_k}` has a minimum 2EC-B solution of `2n - 4`
/// edges and a minimal one of `3n - 9` edges.
///
/// Vertices: `x_i = i - 1`, then `y = k`, `z = k + 1`, `a = k + 2`,
/// `b = k + 3`. Edges: a bidirected cycle on the `x`s, `x_i -> y`,
/// `y <-> z`, `z -> x_i`, `x_i -> a`, `a -> b`, `b -> x_i`.
pub fn gadget_family(k: usize) -> Result<Digraph> {
    if k < 4 {
        return Err(Error::InvalidArgument(format!("gadget needs k >= 4, got {k}")));
    }
    let (y, z, a, b) = (k, k + 1, k + 2, k + 3);
    let mut e = Vec::new();
    for i in 0..k {
        e.extend([(i, (i + 1) % k), ((i + 1) % k, i)]);
    }
    for i in 0..k {
        e.extend([(i, y), (z, i), (i, a), (b, i)]);
    }
    e.extend([(y, z), (z, y), (a, b)]);
    Digraph::build(k + 4, &e, false)
}

fn edge_ids_of(g: &Digraph, pairs: &[(VertexId, VertexId)]) -> Vec<EdgeId> {
    let mut ids: Vec<EdgeId> = pairs
        .iter()
        .map(|&(u, v)| g.out_edges(u).iter().copied().find(|&e| g.head(e) == v).expect("gadget edge"))
        .collect();
    ids.sort_unstable();
    ids
}

/// `2n - 4` edges: the bidirected path `x_1..x_k`, the cycle
/// `x_k -> y -> z -> x_1` and the cycle `x_1 -> a -> b -> x_k`.
pub fn gadget_minimum_witness(k: usize) -> Result<Vec<EdgeId>> {
    let g = gadget_family(k)?;
    let (y, z, a, b) = (k, k + 1, k + 2, k + 3);
    let mut p = Vec::new();
    for i in 0..k - 1 {
        p.extend([(i, i + 1), (i + 1, i)]);
    }
    p.extend([(k - 1, y), (y, z), (z, 0), (0, a), (a, b), (b, k - 1)]);
    Ok(edge_ids_of(&g, &p))
}

/// `3n - 9` edges: every `x_i -> y` and `z -> x_i`, `y -> z`, the directed
/// path `x_1 -> .. -> x_k` and the cycle `x_k -> a -> b -> x_1`.
pub fn gadget_minimal_witness(k: usize) -> Result<Vec<EdgeId>> {
    let g = gadget_family(k)?;
    let (y, z, a, b) = (k, k + 1, k + 2, k + 3);
    let mut p = Vec::new();
    for i in 0..k {
        p.extend([(i, y), (z, i)]);
    }
    for i in 0..k - 1 {
        p.push((i, i + 1));
    }
    p.extend([(y, z), (k - 1, a), (a, b), (b, 0)]);
    Ok(edge_ids_of(&g, &p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn flows() {
        let g1 = fixtures::g1();
        for u in 0..3 {
            for v in 0..3 {
                if u != v {
                    assert_eq!(max_edge_disjoint_paths(&g1, u, v, 5), 2);
                }
            }
        }
        assert_eq!(max_edge_disjoint_paths(&fixtures::g2(), 0, 1, 2), 1);
        let g5 = fixtures::g5();
        assert_eq!(max_edge_disjoint_paths(&g5, 0, 1, 3), 2);
        assert_eq!(max_edge_disjoint_paths(&g5.without_edge(0).unwrap(), 0, 1, 3), 1);
    }

    #[test]
    fn oracle_partitions() {
        let b = oracle_blocks(&fixtures::g5(), &budget()).unwrap();
        assert_eq!(b.sizes, vec![2, 1, 1, 1, 1]);
        assert!(b.same(0, 1));
        assert_eq!(oracle_blocks(&fixtures::g1(), &budget()).unwrap().count(), 1);
        assert_eq!(oracle_blocks(&fixtures::g2(), &budget()).unwrap().count(), 3);
        assert_eq!(oracle_components(&fixtures::g5(), &budget()).unwrap().count(), 6);
        assert_eq!(oracle_components(&fixtures::twin_triangles(), &budget()).unwrap().count(), 1);
        assert_eq!(oracle_components(&fixtures::bridged_triangles(), &budget()).unwrap().sizes, vec![3, 3]);
        assert_eq!(oracle_strong_bridges(&fixtures::g4()), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn small_minimums() {
        let b = budget();
        assert_eq!(oracle_min_subgraph(&fixtures::g1(), Requirement::Scss, &b).unwrap().0, 3);
        assert_eq!(oracle_min_subgraph(&fixtures::g5(), Requirement::Blocks, &b).unwrap().0, 8);
        assert_eq!(oracle_min_subgraph(&fixtures::complete(4), Requirement::TwoEcss, &b).unwrap().0, 8);
        assert_eq!(oracle_min_subgraph(&fixtures::g5(), Requirement::Scss, &b).unwrap().0, 8);
        assert!(oracle_min_subgraph(&fixtures::bidirected_cycle(9), Requirement::Scss, &b).is_err());
    }

    #[test]
    fn minimum_is_at_least_n_plus_n_prime() {
        let b = budget();
        for seed in 0..20 {
            let g = fixtures::random_strongly_connected(6, 11, seed);
            let blocks = oracle_blocks(&g, &b).unwrap();
            let (size, wit) = oracle_min_subgraph(&g, Requirement::Blocks, &b).unwrap();
            assert!(size >= g.n() + blocks.nontrivial_vertices());
            assert_eq!(wit.len(), size);
        }
    }

    #[test]
    fn gadget_shape() {
        for k in 4..9 {
            let g = gadget_family(k).unwrap();
            let n = k + 4;
            assert_eq!((g.n(), g.m()), (n, 6 * n - 21));
            assert_eq!(gadget_minimum_witness(k).unwrap().len(), 2 * n - 4);
            assert_eq!(gadget_minimal_witness(k).unwrap().len(), 3 * n - 9);
        }
        assert!(gadget_family(3).is_err());
        let g = gadget_family(4).unwrap();
        let b = oracle_blocks(&g, &budget()).unwrap();
        assert_eq!(b.sizes, vec![4, 1, 1, 1, 1]);
        let c = oracle_components(&g, &budget()).unwrap();
        assert_eq!(c.sizes, vec![4, 1, 1, 1, 1]);
    }

    #[test]
    fn gadget_k4_minimum_and_minimal() {
        let g = gadget_family(4).unwrap();
        let b = OracleBudget { max_subset_m: 27, ..OracleBudget::default() };
        let (size, wit) = oracle_min_subgraph(&g, Requirement::Blocks, &b).unwrap();
        assert_eq!(size, 12);
        assert!(oracle_is_minimal(&g, &wit, Requirement::Blocks, &b).unwrap());
        assert!(oracle_is_minimal(&g, &gadget_minimum_witness(4).unwrap(), Requirement::Blocks, &b).unwrap());
        assert!(oracle_is_minimal(&g, &gadget_minimal_witness(4).unwrap(), Requirement::Blocks, &b).unwrap());
    }
}
