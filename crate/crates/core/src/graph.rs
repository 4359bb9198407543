//! Adjacency-array directed multigraphs with stable edge ids.
//!
//! Edge ids index a fixed id space. Deleting edges (see [`Digraph::restrict`]
//! and [`Digraph::without_edge`]) removes them from the adjacency arrays but
//! never renumbers the survivors, so subgraphs can be compared with the graph
//! they came from edge for edge.

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Sentinel used for "no vertex" in parent arrays.
pub const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    tail: Vec<VertexId>,
    head: Vec<VertexId>,
    live: Vec<bool>,
    m: usize,
    out_off: Vec<usize>,
    out_adj: Vec<EdgeId>,
    in_off: Vec<usize>,
    in_adj: Vec<EdgeId>,
    origin: Vec<EdgeId>,
    multi: bool,
}

impl Digraph {
    /// Builds a graph whose edge ids are the positions in `edges`.
    ///
    /// Without `allow_multi`, loops and repeated `(tail, head)` pairs are rejected.
    pub fn build(n: usize, edges: &[(VertexId, VertexId)], allow_multi: bool) -> Result<Self> {
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
        }
        if !allow_multi {
            let mut seen = std::collections::HashSet::with_capacity(edges.len());
            for &(u, v) in edges {
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
                if !seen.insert((u, v)) {
                    return Err(Error::DuplicateEdge(u, v));
                }
            }
        }
        let origin = (0..edges.len()).collect();
        let mut g = Self::from_parts(n, edges, origin);
        g.multi = allow_multi;
        Ok(g)
    }

    /// Builds a multigraph from trusted parts: `origin[e]` names the edge of a
    /// parent graph that edge `e` stands for.
    ///
    /// # Panics
    /// If an endpoint is out of range or the origin vector has the wrong length.
    pub fn from_parts(n: usize, edges: &[(VertexId, VertexId)], origin: Vec<EdgeId>) -> Self {
        assert_eq!(edges.len(), origin.len(), "origin length mismatch");
        let tail: Vec<_> = edges.iter().map(|e| e.0).collect();
        let head: Vec<_> = edges.iter().map(|e| e.1).collect();
        assert!(tail.iter().chain(&head).all(|&x| x < n), "endpoint out of range");
        let live = vec![true; edges.len()];
        Self::assemble(n, tail, head, live, origin, true)
    }

    fn assemble(
        n: usize,
        tail: Vec<VertexId>,
        head: Vec<VertexId>,
        live: Vec<bool>,
        origin: Vec<EdgeId>,
        multi: bool,
    ) -> Self {
        let (out_off, out_adj) = csr(n, &tail, &live);
        let (in_off, in_adj) = csr(n, &head, &live);
        let m = live.iter().filter(|&&l| l).count();
        Digraph { n, tail, head, live, m, out_off, out_adj, in_off, in_adj, origin, multi }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of live edges.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Size of the edge id space (live and deleted ids).
    pub fn edge_bound(&self) -> usize {
        self.tail.len()
    }

    pub fn is_multi(&self) -> bool {
        self.multi
    }

    pub fn tail(&self, e: EdgeId) -> VertexId {
        self.tail[e]
    }

    pub fn head(&self, e: EdgeId) -> VertexId {
        self.head[e]
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.tail[e], self.head[e])
    }

    pub fn is_live(&self, e: EdgeId) -> bool {
        e < self.live.len() && self.live[e]
    }

    /// Edge of the parent graph this edge was derived from.
    pub fn origin(&self, e: EdgeId) -> EdgeId {
        self.origin[e]
    }

    pub fn origins(&self) -> &[EdgeId] {
        &self.origin
    }

    /// Live out-edges of `v`, in increasing id order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_adj[self.out_off[v]..self.out_off[v + 1]]
    }

    /// Live in-edges of `v`, in increasing id order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_adj[self.in_off[v]..self.in_off[v + 1]]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_off[v + 1] - self.out_off[v]
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_off[v + 1] - self.in_off[v]
    }

    /// Live edge ids in increasing order.
    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.tail.len()).filter(move |&e| self.live[e])
    }

    /// Live edges as `(id, tail, head)`.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edge_ids().map(move |e| (e, self.tail[e], self.head[e]))
    }

    /// Keeps the live edges for which `keep` holds. Ids and origins are unchanged.
    pub fn restrict(&self, mut keep: impl FnMut(EdgeId) -> bool) -> Digraph {
        let live = (0..self.tail.len()).map(|e| self.live[e] && keep(e)).collect();
        Self::assemble(self.n, self.tail.clone(), self.head.clone(), live, self.origin.clone(), self.multi)
    }

    /// Keeps exactly the listed edges (which must be live).
    pub fn restrict_to(&self, ids: &[EdgeId]) -> Result<Digraph> {
        let mut keep = vec![false; self.tail.len()];
        for &e in ids {
            if !self.is_live(e) {
                return Err(Error::InvalidEdge(e));
            }
            keep[e] = true;
        }
        Ok(self.restrict(|e| keep[e]))
    }

    /// The graph without edge `e`; every other id is unchanged.
    pub fn without_edge(&self, e: EdgeId) -> Result<Digraph> {
        if !self.is_live(e) {
            return Err(Error::InvalidEdge(e));
        }
        Ok(self.restrict(|f| f != e))
    }

    /// Reverses every edge, keeping ids and origins.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            n: self.n,
            tail: self.head.clone(),
            head: self.tail.clone(),
            live: self.live.clone(),
            m: self.m,
            out_off: self.in_off.clone(),
            out_adj: self.in_adj.clone(),
            in_off: self.out_off.clone(),
            in_adj: self.out_adj.clone(),
            origin: self.origin.clone(),
            multi: self.multi,
        }
    }

    /// Renumbers live edges densely; `origin` of the result maps to ids of `self`.
    pub fn compact(&self) -> Digraph {
        let ids: Vec<EdgeId> = self.edge_ids().collect();
        let edges: Vec<_> = ids.iter().map(|&e| self.endpoints(e)).collect();
        let mut g = Self::from_parts(self.n, &edges, ids);
        g.multi = self.multi;
        g
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    ///
    /// Returns the graph (origin = ids of `self`) and, per new vertex, its id in `self`.
    pub fn induced(&self, vertices: &[VertexId]) -> (Digraph, Vec<VertexId>) {
        let mut local = vec![NONE; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (e, u, v) in self.edges() {
            if local[u] != NONE && local[v] != NONE {
                edges.push((local[u], local[v]));
                origin.push(e);
            }
        }
        let mut g = Self::from_parts(vertices.len(), &edges, origin);
        g.multi = self.multi;
        (g, vertices.to_vec())
    }
}

fn csr(n: usize, key: &[VertexId], live: &[bool]) -> (Vec<usize>, Vec<EdgeId>) {
    let mut off = vec![0usize; n + 1];
    for (e, &k) in key.iter().enumerate() {
        if live[e] {
            off[k + 1] += 1;
        }
    }
    for i in 0..n {
        off[i + 1] += off[i];
    }
    let mut pos = off.clone();
    let mut adj = vec![0; off[n]];
    for (e, &k) in key.iter().enumerate() {
        if live[e] {
            adj[pos[k]] = e;
            pos[k] += 1;
        }
    }
    (off, adj)
}

/// Strongly connected components: `comp[v]` in `0..count`.
///
/// Component ids follow the order in which Tarjan's method completes them,
/// which is a reverse topological order of the condensation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccPartition {
    pub comp: Vec<usize>,
    pub count: usize,
}

impl SccPartition {
    /// Vertex lists per component, each in increasing vertex order.
    pub fn classes(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.comp.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Iterative Tarjan lowlink SCC.
pub fn scc(g: &Digraph) -> SccPartition {
    let n = g.n();
    let mut index = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut comp = vec![NONE; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut call: Vec<(VertexId, usize)> = Vec::new();
    let mut next = 0usize;
    let mut count = 0usize;
    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            let out = g.out_edges(v);
            if *i < out.len() {
                let w = g.head(out[*i]);
                *i += 1;
                if index[w] == NONE {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    SccPartition { comp, count }
}

pub fn is_strongly_connected(g: &Digraph) -> bool {
    g.n() <= 1 || scc(g).count == 1
}

/// Induced subgraph on the largest strongly connected component.
///
/// Ties go to the component containing the smallest vertex. Vertices are
/// renumbered in increasing original order; the second value maps new
/// vertex ids back to `g`, and edge origins name edges of `g`.
pub fn largest_scc(g: &Digraph) -> (Digraph, Vec<VertexId>) {
    if g.n() == 0 {
        return (g.clone(), Vec::new());
    }
    let p = scc(g);
    let mut size = vec![0usize; p.count];
    for &c in &p.comp {
        size[c] += 1;
    }
    let mut best = p.comp[0];
    for v in 0..g.n() {
        let c = p.comp[v];
        if size[c] > size[best] {
            best = c;
        }
    }
    let verts: Vec<VertexId> = (0..g.n()).filter(|&v| p.comp[v] == best).collect();
    g.induced(&verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(Digraph::build(2, &[(0, 2)], false), Err(Error::VertexOutOfRange { vertex: 2, n: 2 }));
        assert_eq!(Digraph::build(2, &[(1, 1)], false), Err(Error::SelfLoop(1)));
        assert_eq!(Digraph::build(2, &[(0, 1), (0, 1)], false), Err(Error::DuplicateEdge(0, 1)));
        assert!(Digraph::build(2, &[(0, 1), (0, 1), (1, 1)], true).is_ok());
    }

    #[test]
    fn adjacency_lists_cover_each_edge_once() {
        for g in fixtures::all() {
            let mut out: Vec<_> = (0..g.n()).flat_map(|v| g.out_edges(v).to_vec()).collect();
            let mut inn: Vec<_> = (0..g.n()).flat_map(|v| g.in_edges(v).to_vec()).collect();
            out.sort_unstable();
            inn.sort_unstable();
            let ids: Vec<_> = g.edge_ids().collect();
            assert_eq!(out, ids);
            assert_eq!(inn, ids);
            assert!(g.edge_ids().all(|e| g.origin(e) == e));
        }
    }

    #[test]
    fn reverse_swaps_and_round_trips() {
        let g2 = fixtures::g2();
        let r = g2.reverse();
        assert_eq!(r.endpoints(0), (1, 0));
        assert_eq!(r.endpoints(2), (0, 2));
        assert_eq!(r.reverse(), g2);
        let g5 = fixtures::g5();
        assert_eq!(scc(&g5.reverse()).count, 1);
    }

    #[test]
    fn scc_examples() {
        assert_eq!(scc(&fixtures::g2()).count, 1);
        assert_eq!(scc(&fixtures::g5()).count, 1);
        let two = Digraph::build(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)], false).unwrap();
        let p = scc(&two);
        assert_eq!(p.count, 2);
        assert_eq!(p.comp[0], p.comp[2]);
        assert_ne!(p.comp[0], p.comp[3]);
    }

    #[test]
    fn largest_scc_drops_isolated_vertex() {
        let g = Digraph::build(4, &[(0, 1), (1, 2), (2, 0)], false).unwrap();
        let (h, map) = largest_scc(&g);
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 3);
        assert_eq!(map, vec![0, 1, 2]);
        assert!(is_strongly_connected(&h));
    }

    #[test]
    fn deletion_keeps_ids() {
        let g2 = fixtures::g2();
        let h = g2.without_edge(0).unwrap();
        assert!(!is_strongly_connected(&h));
        assert_eq!(h.m(), 2);
        assert_eq!(h.endpoints(1), (1, 2));
        assert!(!h.is_live(0));
        assert_eq!(h.without_edge(0), Err(Error::InvalidEdge(0)));
        let g1 = fixtures::g1();
        assert!(is_strongly_connected(&g1.without_edge(3).unwrap()));
        let g5 = fixtures::g5();
        assert!(!is_strongly_connected(&g5.without_edge(0).unwrap()));
    }
}
