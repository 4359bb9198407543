//! Sparse certificates: spanning subgraphs that keep the 2-edge-connected
//! blocks and/or components of a strongly connected digraph.
//!
//! Every function takes a graph and returns sorted ids of that graph.

use std::collections::HashMap;

use crate::decomposition::{blocks, components, condense, expand, first_level, second_level_all, AuxGraph};
use crate::dominators::{dominator_tree, strong_bridges, FlowGraph};
use crate::error::{Error, Result};
use crate::graph::{is_strongly_connected, scc, Digraph, EdgeId, VertexId};
use crate::spanning::{edge_disjoint_pair, edge_prioritized_dfs, independent_pair, SpanningTree};

pub type CertificateEdgeList = Vec<EdgeId>;

/// Sizes behind a block certificate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CertificateStats {
    pub n: usize,
    /// Vertices in nontrivial blocks.
    pub n_prime: usize,
    /// Bridges of the flow graph rooted at the start vertex.
    pub b: usize,
    pub phase1: usize,
    pub phase2: usize,
    pub phase3: usize,
    /// Auxiliary leaves whose two entering tree edges were reduced to one.
    pub merged_pairs: usize,
}

impl CertificateStats {
    pub fn total(&self) -> usize {
        self.phase1 + self.phase2 + self.phase3
    }
}

/// Disjoint-set union with path halving and union by rank.
#[derive(Clone, Debug)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`, returning the new representative.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> usize {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return a;
        }
        let (hi, lo) = if self.rank[a] >= self.rank[b] { (a, b) } else { (b, a) };
        self.parent[lo] = hi;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        hi
    }
}

/// Accumulates certificate edges and counts how many each phase adds.
struct Collector {
    keep: Vec<bool>,
    added: usize,
}

impl Collector {
    fn new(bound: usize) -> Collector {
        Collector { keep: vec![false; bound], added: 0 }
    }

    fn add(&mut self, e: EdgeId) {
        if !self.keep[e] {
            self.keep[e] = true;
            self.added += 1;
        }
    }

    fn take_count(&mut self) -> usize {
        std::mem::take(&mut self.added)
    }

    fn ids(&self) -> Vec<EdgeId> {
        (0..self.keep.len()).filter(|&e| self.keep[e]).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Variant {
    Original,
    Modified,
}

/// Block certificate from independent spanning trees in three phases.
pub fn ist_b_original(g: &Digraph, s: VertexId) -> Result<(CertificateEdgeList, CertificateStats)> {
    ist_b_impl(g, s, Variant::Original)
}

/// Block certificate with the leaf-merging and sparser per-SCC phases.
pub fn ist_b(g: &Digraph, s: VertexId) -> Result<(CertificateEdgeList, CertificateStats)> {
    ist_b_impl(g, s, Variant::Modified)
}

fn ist_b_impl(g: &Digraph, s: VertexId, variant: Variant) -> Result<(CertificateEdgeList, CertificateStats)> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    if s >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: s, n: g.n() });
    }
    let mut stats = CertificateStats { n: g.n(), ..Default::default() };
    if g.n() <= 1 {
        return Ok((Vec::new(), stats));
    }
    stats.n_prime = blocks(g)?.nontrivial_vertices();
    let (dt, br, _, firsts) = first_level(g, s)?;
    stats.b = br.len();
    let mut cert = Collector::new(g.edge_bound());

    let fg = FlowGraph { graph: g, start: s };
    for e in independent_pair(fg, &dt).union() {
        cert.add(e);
    }
    stats.phase1 = cert.take_count();

    for h in &firsts {
        phase_two(h, variant, &mut cert, &mut stats.merged_pairs);
    }
    stats.phase2 = cert.take_count();

    for h in &firsts {
        for q in second_level_all(h) {
            let Some(bridge) = q.bridge else { continue };
            phase_three(h, &q, bridge, variant, &mut cert)?;
        }
    }
    stats.phase3 = cert.take_count();
    Ok((cert.ids(), stats))
}

/// Independent trees of `H^R(r)`, mapped back to the input graph.
fn phase_two(h: &AuxGraph, variant: Variant, cert: &mut Collector, merged: &mut usize) {
    let hr = h.graph.reverse();
    let fg = FlowGraph::new(&hr, h.root).expect("auxiliary graph is strongly connected");
    let dt = dominator_tree(fg);
    let pair = independent_pair(fg, &dt);
    let base = |e: EdgeId| h.parent_edge[e];
    let mut drop = vec![false; hr.edge_bound()];
    if variant == Variant::Modified {
        let leaf = |t: &SpanningTree| {
            let mut is_leaf = vec![true; hr.n()];
            for e in t.edges() {
                is_leaf[hr.tail(e)] = false;
            }
            is_leaf
        };
        let (lb, lr) = (leaf(&pair.blue), leaf(&pair.red));
        for x in 0..hr.n() {
            if h.is_ordinary(x) || Some(x) == h.outer || !lb[x] || !lr[x] {
                continue;
            }
            let (Some(eb), Some(er)) = (pair.blue.parent[x], pair.red.parent[x]) else { continue };
            if eb != er {
                drop[if base(eb) < base(er) { er } else { eb }] = true;
                *merged += 1;
            }
        }
    }
    for e in pair.union() {
        if !drop[e] {
            cert.add(base(e));
        }
    }
}

/// Keeps every strongly connected piece of a second-level graph (minus its bridge) connected.
fn phase_three(h: &AuxGraph, q: &AuxGraph, bridge: EdgeId, variant: Variant, cert: &mut Collector) -> Result<()> {
    let piece = q.graph.without_edge(bridge)?;
    let to_base = |local: EdgeId| h.parent_edge[q.parent_edge[local]];
    for class in scc(&piece).classes() {
        if class.len() < 2 {
            continue;
        }
        let ordinary: Vec<VertexId> = class.iter().copied().filter(|&v| q.is_ordinary(v)).collect();
        let needed = match variant {
            Variant::Original => !ordinary.is_empty(),
            Variant::Modified => ordinary.len() >= 2,
        };
        if !needed {
            continue;
        }
        // Ordinary vertices first so that local vertex 0 is the smallest one.
        let mut verts = ordinary.clone();
        verts.extend(class.iter().copied().filter(|&v| !q.is_ordinary(v)));
        let (sub, _) = piece.induced(&verts);
        let base_of = |e: EdgeId| to_base(sub.origin(e));
        let preferred: Vec<bool> = (0..sub.edge_bound()).map(|e| cert.keep[base_of(e)]).collect();
        let is_ord = |v: VertexId| v < ordinary.len();

        let trees = tree_pair_pruned(&sub, &preferred, variant == Variant::Modified, is_ord);
        let chosen = match variant {
            Variant::Original => trees,
            Variant::Modified => {
                let zni = zni_scss(&sub, &preferred)?;
                let fresh = |ids: &[EdgeId]| ids.iter().filter(|&&e| !preferred[e]).count();
                if fresh(&zni) <= fresh(&trees) {
                    zni
                } else {
                    trees
                }
            }
        };
        for e in chosen {
            cert.add(base_of(e));
        }
    }
    Ok(())
}

/// Out- and in-tree of a strongly connected graph from vertex 0, optionally
/// with non-ordinary leaves pruned repeatedly.
fn tree_pair_pruned(sub: &Digraph, preferred: &[bool], prune: bool, is_ord: impl Fn(VertexId) -> bool) -> Vec<EdgeId> {
    let rev = sub.reverse();
    let mut out = Vec::new();
    for g in [sub, &rev] {
        let t = edge_prioritized_dfs(FlowGraph { graph: g, start: 0 }, preferred);
        let mut alive: Vec<bool> = t.parent.iter().map(|p| p.is_some()).collect();
        if prune {
            let mut kids = vec![0usize; g.n()];
            for e in t.edges() {
                kids[g.tail(e)] += 1;
            }
            let mut stack: Vec<VertexId> = (0..g.n()).filter(|&v| alive[v] && kids[v] == 0 && !is_ord(v)).collect();
            while let Some(v) = stack.pop() {
                alive[v] = false;
                let p = g.tail(t.parent[v].unwrap());
                kids[p] -= 1;
                if kids[p] == 0 && alive[p] && !is_ord(p) {
                    stack.push(p);
                }
            }
        }
        out.extend((0..g.n()).filter(|&v| alive[v]).map(|v| t.parent[v].unwrap()));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// 2-edge-connected spanning subgraph of a 2-edge-connected graph: two
/// edge-disjoint out-trees and two edge-disjoint in-trees of vertex 0.
pub fn two_ecss_edt(c: &Digraph) -> Result<CertificateEdgeList> {
    if let Some(&e) = strong_bridges(c)?.first() {
        return Err(Error::HasStrongBridge(e));
    }
    if c.n() <= 1 {
        return Ok(Vec::new());
    }
    let rev = c.reverse();
    let mut ids = edge_disjoint_pair(FlowGraph::new(c, 0)?).union();
    ids.extend(edge_disjoint_pair(FlowGraph::new(&rev, 0)?).union());
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

/// Strongly connected spanning subgraph by depth-first cycle contraction.
///
/// The search always advances to an unvisited vertex when the current
/// contracted vertex has an edge to one; otherwise it closes the cycle through
/// the edge reaching the shallowest vertex of the current path. Strongly
/// connected pieces of the `preferred` subgraph are contracted up front and
/// their preferred edges kept.
pub fn zni_scss(g: &Digraph, preferred: &[bool]) -> Result<CertificateEdgeList> {
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let is_pref = |e: EdgeId| preferred.get(e).copied().unwrap_or(false);
    let pref = g.restrict(is_pref);
    let pc = scc(&pref);
    let mut dsu = Dsu::new(n);
    let mut members: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut result = Vec::new();
    for (e, u, v) in pref.edges() {
        if pc.comp[u] == pc.comp[v] {
            dsu.union(u, v);
            result.push(e);
        }
    }
    for v in 0..n {
        let r = dsu.find(v);
        members[r].push(v);
    }

    const OFF: usize = usize::MAX;
    let mut visited = vec![false; n];
    let mut pos = vec![OFF; n];
    let mut path: Vec<VertexId> = Vec::new();
    // Per representative: unscanned (vertex, cursor) pairs and the best back edge seen.
    let mut pending: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    let mut best: Vec<Option<EdgeId>> = vec![None; n];

    let enter = |r: VertexId,
                 members: &mut Vec<Vec<VertexId>>,
                 visited: &mut Vec<bool>,
                 pending: &mut Vec<Vec<(VertexId, usize)>>| {
        for &x in &members[r] {
            visited[x] = true;
        }
        pending[r] = members[r].iter().rev().map(|&x| (x, 0)).collect();
    };
    let root = dsu.find(0);
    enter(root, &mut members, &mut visited, &mut pending);
    pos[root] = 0;
    path.push(root);

    while let Some(&cur) = path.last() {
        let next = loop {
            let Some(top) = pending[cur].last_mut() else { break None };
            let (x, i) = *top;
            let out = g.out_edges(x);
            if i == out.len() {
                pending[cur].pop();
                continue;
            }
            top.1 += 1;
            break Some(out[i]);
        };
        if let Some(e) = next {
            let y = g.head(e);
            let ry = dsu.find(y);
            if ry == cur {
                continue;
            }
            if !visited[y] {
                result.push(e);
                enter(ry, &mut members, &mut visited, &mut pending);
                pos[ry] = path.len();
                path.push(ry);
            } else {
                let better = match best[cur] {
                    None => true,
                    Some(f) => {
                        let (a, b) = (pos[dsu.find(y)], pos[dsu.find(g.head(f))]);
                        a < b || (a == b && e < f)
                    }
                };
                if better {
                    best[cur] = Some(e);
                }
            }
            continue;
        }
        // Current contracted vertex is exhausted.
        if path.len() == 1 {
            break;
        }
        let Some(e) = best[cur] else { return Err(Error::NotStronglyConnected) };
        result.push(e);
        let target = pos[dsu.find(g.head(e))];
        let merged_nodes: Vec<VertexId> = path.drain(target..).collect();
        let mut rep = merged_nodes[0];
        let mut all_pending = Vec::new();
        let mut all_members = Vec::new();
        let mut cands = Vec::new();
        for &r in &merged_nodes {
            all_pending.append(&mut pending[r]);
            all_members.append(&mut members[r]);
            cands.extend(best[r].take());
            pos[r] = OFF;
            rep = dsu.union(rep, r);
        }
        let mut nb: Option<EdgeId> = None;
        for f in cands {
            let p = pos[dsu.find(g.head(f))];
            if p == OFF || p >= target {
                continue;
            }
            let better = match nb {
                None => true,
                Some(o) => {
                    let q = pos[dsu.find(g.head(o))];
                    p < q || (p == q && f < o)
                }
            };
            if better {
                nb = Some(f);
            }
        }
        pending[rep] = all_pending;
        members[rep] = all_members;
        best[rep] = nb;
        pos[rep] = target;
        path.push(rep);
    }
    if visited.iter().any(|&v| !v) {
        return Err(Error::NotStronglyConnected);
    }
    result.sort_unstable();
    result.dedup();
    Ok(result)
}

/// Condensed graph of the components with loops dropped and at most `cap`
/// parallel edges per ordered pair (smallest ids kept). Origins are input ids.
pub(crate) fn capped_condensed(g: &Digraph, cap: usize) -> Result<(Digraph, crate::decomposition::ComponentPartition)> {
    let comp = components(g)?;
    let cg = condense(g, &comp);
    let mut count: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let h = cg.graph.restrict(|e| {
        let (u, v) = cg.graph.endpoints(e);
        if u == v {
            return false;
        }
        let c = count.entry((u, v)).or_insert(0);
        *c += 1;
        *c <= cap
    });
    Ok((h, comp))
}

/// Per-component 2-edge-connected certificates, as input ids.
fn component_certificates(g: &Digraph, comp: &crate::decomposition::ComponentPartition) -> Result<Vec<Vec<EdgeId>>> {
    let mut out = Vec::new();
    for class in comp.classes() {
        if class.len() < 2 {
            continue;
        }
        let (sub, _) = g.induced(&class);
        out.push(two_ecss_edt(&sub)?.into_iter().map(|e| sub.origin(e)).collect());
    }
    Ok(out)
}

fn expand_ids(
    g: &Digraph,
    h: &Digraph,
    h_ids: &[EdgeId],
    comp: &crate::decomposition::ComponentPartition,
) -> Result<CertificateEdgeList> {
    let per = component_certificates(g, comp)?;
    // `h` has origins into `g`; `expand` expects a view whose origins are ids of `g`.
    let h_sub = h.restrict_to(h_ids)?;
    let origins_ok = h_sub.edge_ids().all(|e| g.is_live(h_sub.origin(e)));
    debug_assert!(origins_ok);
    let out = expand(&h_sub, g, comp, &per)?;
    Ok(out.edge_ids().collect())
}

/// Certificate for blocks and components: a block certificate of the
/// condensed graph plus a 2-edge-connected certificate of every component.
pub fn ist_bc(g: &Digraph) -> Result<CertificateEdgeList> {
    let (h, comp) = capped_condensed(g, 2)?;
    let (ids, _) = ist_b(&h, 0)?;
    expand_ids(g, &h, &ids, &comp)
}

/// Certificate for components only: a strongly connected spanning subgraph
/// of the simple condensed graph plus per-component certificates.
pub fn zni_c(g: &Digraph) -> Result<CertificateEdgeList> {
    let (h, comp) = capped_condensed(g, 1)?;
    let ids = zni_scss(&h, &[])?;
    expand_ids(g, &h, &ids, &comp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn dsu_basics() {
        let mut d = Dsu::new(5);
        d.union(0, 1);
        d.union(3, 4);
        assert_eq!(d.find(0), d.find(1));
        assert_ne!(d.find(1), d.find(3));
        d.union(1, 4);
        assert_eq!(d.find(0), d.find(3));
    }

    #[test]
    fn edt_examples() {
        assert_eq!(two_ecss_edt(&fixtures::g1()).unwrap().len(), 6);
        assert_eq!(two_ecss_edt(&fixtures::bidirected_cycle(4)).unwrap().len(), 8);
        let k4 = two_ecss_edt(&fixtures::complete(4)).unwrap().len();
        assert!((8..=12).contains(&k4));
        assert!(matches!(two_ecss_edt(&fixtures::g2()), Err(Error::HasStrongBridge(_))));
    }

    #[test]
    fn zni_examples() {
        assert_eq!(zni_scss(&fixtures::g2(), &[]).unwrap().len(), 3);
        let g1 = fixtures::g1();
        // 0->1, 1->2, 2->0
        let mut pref = vec![false; g1.edge_bound()];
        for (e, u, v) in g1.edges() {
            pref[e] = (u + 1) % 3 == v;
        }
        let got = zni_scss(&g1, &pref).unwrap();
        let want: Vec<EdgeId> = (0..g1.edge_bound()).filter(|&e| pref[e]).collect();
        assert_eq!(got, want);
        assert_eq!(zni_scss(&fixtures::g1(), &[]).unwrap().len(), 3);
        assert!(zni_scss(&Digraph::build(2, &[(0, 1)], false).unwrap(), &[]).is_err());
    }

    #[test]
    fn zni_is_strongly_connected() {
        for seed in 0..300 {
            let n = 2 + seed as usize % 30;
            let g = fixtures::random_strongly_connected(n, 3 * n, seed);
            let ids = zni_scss(&g, &[]).unwrap();
            assert!(is_strongly_connected(&g.restrict_to(&ids).unwrap()));
            assert!(ids.len() <= 2 * (n - 1));
        }
    }

    #[test]
    fn block_certificate_phase_sizes() {
        for g in fixtures::all() {
            let (ids, st) = ist_b(&g, 0).unwrap();
            assert_eq!(st.phase1, 2 * st.n - st.b - 2);
            assert_eq!(ids.len(), st.total());
            assert_eq!(blocks(&g.restrict_to(&ids).unwrap()).unwrap(), blocks(&g).unwrap());
        }
    }

    #[test]
    fn condensed_certificates() {
        let g = fixtures::bridged_triangles();
        assert_eq!(ist_bc(&g).unwrap().len(), 14);
        assert_eq!(zni_c(&g).unwrap().len(), 14);
        assert_eq!(zni_c(&fixtures::g5()).unwrap().len(), 8);
        let t = fixtures::twin_triangles();
        let ids = ist_bc(&t).unwrap();
        let sub = t.restrict_to(&ids).unwrap();
        assert_eq!(components(&sub).unwrap(), components(&t).unwrap());
    }
}
