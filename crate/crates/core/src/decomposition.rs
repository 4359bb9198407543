//! Canonical decomposition, auxiliary graphs, 2-edge-connected blocks and
//! components, and the condensed graph.

use crate::dominators::{analyze_flow, strong_bridges, BridgeSet, DominatorTree, FlowGraph};
use crate::error::{Error, Result};
use crate::graph::{is_strongly_connected, scc, Digraph, EdgeId, VertexId, NONE};

/// Trees of the dominator tree after deleting the flow-graph bridges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalDecomposition {
    /// Root (marked vertex) of the tree containing each vertex.
    pub tree: Vec<VertexId>,
    /// Marked vertices in dominator-tree preorder; the start vertex comes first.
    pub marked: Vec<VertexId>,
    pub bridges: Vec<EdgeId>,
}

impl CanonicalDecomposition {
    pub fn is_marked(&self, v: VertexId) -> bool {
        self.tree[v] == v
    }
}

pub fn canonical_decomposition(dt: &DominatorTree, br: &BridgeSet) -> CanonicalDecomposition {
    let n = br.into.len();
    let mut tree = vec![NONE; n];
    let mut marked = Vec::new();
    for &v in dt.preorder() {
        match dt.idom(v) {
            Some(p) if br.into[v].is_none() => tree[v] = tree[p],
            _ => {
                tree[v] = v;
                marked.push(v);
            }
        }
    }
    CanonicalDecomposition { tree, marked, bridges: br.edges.clone() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexTag {
    Ordinary,
    Auxiliary,
}

/// A contracted auxiliary graph around one tree of a canonical decomposition.
///
/// Ordinary vertices come first, in dominator-tree preorder (so the root is
/// vertex 0), followed by auxiliary vertices ordered by the vertex they are
/// named after.
#[derive(Clone, Debug)]
pub struct AuxGraph {
    pub graph: Digraph,
    pub tag: Vec<VertexTag>,
    /// Local id of the marked root (always 0).
    pub root: VertexId,
    /// Per local vertex, the vertex of the decomposed graph it is named after.
    pub parent_vertex: Vec<VertexId>,
    /// Per local vertex, the corresponding vertex of the base graph.
    pub origin_vertex: Vec<VertexId>,
    /// Per local edge, the edge of the decomposed graph it stands for.
    /// `graph.origin(e)` gives the base-graph edge.
    pub parent_edge: Vec<EdgeId>,
    /// Local id of the vertex standing for everything outside the root's subtree.
    pub outer: Option<VertexId>,
    /// For second-level graphs, the local id of the bridge entering the root.
    pub bridge: Option<EdgeId>,
    /// For second-level graphs, whether each vertex was auxiliary one level up.
    pub first_level_aux: Vec<bool>,
}

impl AuxGraph {
    pub fn is_ordinary(&self, v: VertexId) -> bool {
        self.tag[v] == VertexTag::Ordinary
    }

    pub fn ordinary_count(&self) -> usize {
        self.tag.iter().filter(|&&t| t == VertexTag::Ordinary).count()
    }

    pub fn auxiliary_count(&self) -> usize {
        self.tag.len() - self.ordinary_count()
    }
}

/// Builds the auxiliary graphs of every marked vertex of a flow graph.
/// Local edges map to edges of `fg.graph` via both `parent_edge` and origin.
fn aux_graphs_of(fg: FlowGraph<'_>, dt: &DominatorTree, cd: &CanonicalDecomposition) -> Vec<AuxGraph> {
    let g = fg.graph;
    let s = fg.start;
    let n = g.n();
    let k = cd.marked.len();
    let mut slot = vec![NONE; n];
    for (i, &r) in cd.marked.iter().enumerate() {
        slot[r] = i;
    }
    let mut members: Vec<Vec<VertexId>> = vec![Vec::new(); k];
    for &v in dt.preorder() {
        members[slot[cd.tree[v]]].push(v);
    }
    // Marked children hanging off each tree, sorted by preorder.
    let mut hanging: Vec<Vec<VertexId>> = vec![Vec::new(); k];
    for &w in &cd.marked {
        if let Some(p) = dt.idom(w) {
            hanging[slot[cd.tree[p]]].push(w);
        }
    }

    // Edges from inside a marked child w to outside the tree's root subtree.
    let mut escape: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); k];
    let mut best = vec![NONE; n];
    let mut touched = Vec::new();
    for (e, x, y) in g.edges() {
        let mut a = cd.tree[x];
        if dt.dominates(a, y) {
            continue;
        }
        while a != s {
            let r = cd.tree[dt.idom(a).unwrap()];
            if dt.dominates(r, y) {
                break;
            }
            if best[a] == NONE {
                touched.push(a);
            }
            if best[a] == NONE || e < best[a] {
                best[a] = e;
            }
            a = r;
        }
    }
    for &a in &touched {
        let r = cd.tree[dt.idom(a).unwrap()];
        escape[slot[r]].push((a, best[a]));
    }

    let mut local = vec![NONE; n];
    let mut out = Vec::with_capacity(k);
    for (i, &r) in cd.marked.iter().enumerate() {
        let ord = &members[i];
        let mut aux: Vec<VertexId> = hanging[i].clone();
        if let Some(d) = dt.idom(r) {
            aux.push(d);
        }
        aux.sort_unstable();
        for (j, &v) in ord.iter().chain(aux.iter()).enumerate() {
            local[v] = j;
        }
        let dr = dt.idom(r).map(|d| local[d]);
        let hang = &hanging[i];
        let map = |x: VertexId| -> VertexId {
            if cd.tree[x] == r {
                local[x]
            } else if dt.dominates(r, x) {
                let j = hang.partition_point(|&w| dt.pre(w) <= dt.pre(x));
                local[hang[j - 1]]
            } else {
                dr.expect("vertex outside the start subtree")
            }
        };
        let mut edges: Vec<(EdgeId, VertexId, VertexId)> = Vec::new();
        for &v in ord {
            for &e in g.out_edges(v) {
                edges.push((e, local[v], map(g.head(e))));
            }
            for &e in g.in_edges(v) {
                let x = g.tail(e);
                if cd.tree[x] != r {
                    edges.push((e, map(x), local[v]));
                }
            }
        }
        for &(w, e) in &escape[i] {
            edges.push((e, local[w], dr.unwrap()));
        }
        edges.retain(|&(_, u, v)| u != v);
        edges.sort_unstable();
        // Parallels touching an auxiliary vertex are redundant (at most one
        // disjoint path can pass through it); parallels between ordinary
        // vertices of a multigraph input are not.
        let nord = ord.len();
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        edges.retain(|&(_, u, v)| (u < nord && v < nord) || seen.insert((u, v)));

        let nl = ord.len() + aux.len();
        let pairs: Vec<(VertexId, VertexId)> = edges.iter().map(|&(_, u, v)| (u, v)).collect();
        let parent_edge: Vec<EdgeId> = edges.iter().map(|&(e, _, _)| e).collect();
        let graph = Digraph::from_parts(nl, &pairs, parent_edge.iter().map(|&e| g.origin(e)).collect());
        let mut tag = vec![VertexTag::Ordinary; ord.len()];
        tag.resize(nl, VertexTag::Auxiliary);
        let parent_vertex: Vec<VertexId> = ord.iter().chain(aux.iter()).copied().collect();
        for &v in &parent_vertex {
            local[v] = NONE;
        }
        out.push(AuxGraph {
            graph,
            first_level_aux: tag.iter().map(|&t| t == VertexTag::Auxiliary).collect(),
            tag,
            root: 0,
            origin_vertex: parent_vertex.clone(),
            parent_vertex,
            parent_edge,
            outer: dr,
            bridge: None,
        });
    }
    out
}

/// First-level auxiliary graphs of `G(s)`, one per marked vertex, in the order of `cd.marked`.
pub fn first_level_aux_graphs(fg: FlowGraph<'_>, dt: &DominatorTree, cd: &CanonicalDecomposition) -> Vec<AuxGraph> {
    aux_graphs_of(fg, dt, cd)
}

/// Convenience: dominator tree, bridges, decomposition and first-level graphs of `G(s)`.
pub fn first_level(
    g: &Digraph,
    s: VertexId,
) -> Result<(DominatorTree, BridgeSet, CanonicalDecomposition, Vec<AuxGraph>)> {
    let (dt, br) = analyze_flow(g, s)?;
    let cd = canonical_decomposition(&dt, &br);
    let fg = FlowGraph { graph: g, start: s };
    let aux = aux_graphs_of(fg, &dt, &cd);
    Ok((dt, br, cd, aux))
}

/// Auxiliary graphs of `H^R(r)` including the piece of the root itself
/// (with `bridge = None`). Tags are two-level: ordinary iff ordinary in both.
pub(crate) fn second_level_all(h: &AuxGraph) -> Vec<AuxGraph> {
    let hr = h.graph.reverse();
    let fg = FlowGraph::new(&hr, h.root).expect("first-level auxiliary graph is strongly connected");
    let (dt, br) = analyze_flow(&hr, h.root).expect("reachability checked");
    let cd = canonical_decomposition(&dt, &br);
    if cfg!(debug_assertions) {
        check_reverse_bridges(h, &br);
    }
    let mut out = aux_graphs_of(fg, &dt, &cd);
    for (a, &q) in out.iter_mut().zip(&cd.marked) {
        a.bridge = br.into[q];
        if let Some(b) = a.bridge.as_mut() {
            *b = a.parent_edge.iter().position(|&e| e == *b).expect("bridge survives contraction");
        }
        for v in 0..a.tag.len() {
            let hv = a.parent_vertex[v];
            a.first_level_aux[v] = !h.is_ordinary(hv);
            if !h.is_ordinary(hv) {
                a.tag[v] = VertexTag::Auxiliary;
            }
            a.origin_vertex[v] = h.origin_vertex[hv];
        }
    }
    out
}

/// A strong bridge of a first-level graph that is not a bridge of `G(s)`
/// must reverse to a bridge of `H^R(r)`, unless it is the only edge entering
/// `d(r)` (then it is a bridge of `H(r)` instead). The bridges of `G(s)` inside `H`
/// are the edges entering an auxiliary vertex other than `d(r)` and the edge
/// leaving `d(r)`.
fn check_reverse_bridges(h: &AuxGraph, br_rev: &BridgeSet) {
    let g = &h.graph;
    let Ok(sb) = strong_bridges(g) else { return };
    let dr = h.outer;
    for e in sb {
        let (u, v) = g.endpoints(e);
        let entering_aux = !h.is_ordinary(v) && Some(v) != dr;
        let leaving_dr = Some(u) == dr;
        // The sole edge into d(r) is a bridge of H(r) rather than a reverse bridge.
        let sole_into_dr = Some(v) == dr && g.in_degree(v) == 1;
        if !(entering_aux || leaving_dr || sole_into_dr) {
            assert!(br_rev.contains(e), "strong bridge {e} of an auxiliary graph is not a reverse bridge");
        }
    }
}

/// Second-level auxiliary graphs of a first-level graph, one per bridge `(p, q)` of `H^R(r)`.
pub fn second_level_aux_graphs(h: &AuxGraph) -> Vec<(EdgeId, AuxGraph)> {
    second_level_all(h).into_iter().filter_map(|a| a.bridge.map(|b| (b, a))).collect()
}

/// Vertex partition with ids numbered by first occurrence in vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub id: Vec<usize>,
    pub sizes: Vec<usize>,
}

pub type BlockPartition = Partition;
pub type ComponentPartition = Partition;

impl Partition {
    /// Normalizes arbitrary labels so that ids appear in increasing order of first vertex.
    pub fn from_labels(labels: &[usize]) -> Partition {
        let mut map = std::collections::HashMap::new();
        let mut id = Vec::with_capacity(labels.len());
        let mut sizes = Vec::new();
        for &l in labels {
            let next = map.len();
            let c = *map.entry(l).or_insert(next);
            if c == sizes.len() {
                sizes.push(0);
            }
            sizes[c] += 1;
            id.push(c);
        }
        Partition { id, sizes }
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn same(&self, u: VertexId, v: VertexId) -> bool {
        self.id[u] == self.id[v]
    }

    pub fn class_size(&self, v: VertexId) -> usize {
        self.sizes[self.id[v]]
    }

    pub fn classes(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.count()];
        for (v, &c) in self.id.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Number of vertices in classes of size at least two.
    pub fn nontrivial_vertices(&self) -> usize {
        self.sizes.iter().filter(|&&s| s >= 2).sum()
    }
}

/// 2-edge-connected blocks of a strongly connected digraph.
pub fn blocks(g: &Digraph) -> Result<BlockPartition> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    if g.n() == 0 {
        return Ok(Partition { id: Vec::new(), sizes: Vec::new() });
    }
    let (_, _, _, firsts) = first_level(g, 0)?;
    let mut label = vec![NONE; g.n()];
    let mut next = 0;
    for h in &firsts {
        for q in second_level_all(h) {
            let piece = match q.bridge {
                Some(b) => q.graph.without_edge(b)?,
                None => q.graph.clone(),
            };
            let p = scc(&piece);
            let base = next;
            next += p.count;
            for v in 0..piece.n() {
                if q.is_ordinary(v) {
                    label[q.origin_vertex[v]] = base + p.comp[v];
                }
            }
        }
    }
    debug_assert!(label.iter().all(|&l| l != NONE));
    Ok(Partition::from_labels(&label))
}

/// 2-edge-connected components, by repeatedly splitting into strongly
/// connected pieces and removing strong bridges.
pub fn components(g: &Digraph) -> Result<ComponentPartition> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    let mut label = vec![NONE; g.n()];
    let mut next = 0;
    let mut work: Vec<Vec<VertexId>> = vec![(0..g.n()).collect()];
    while let Some(set) = work.pop() {
        if set.len() <= 1 {
            for &v in &set {
                label[v] = next;
                next += 1;
            }
            continue;
        }
        let (sub, map) = g.induced(&set);
        let p = scc(&sub);
        if p.count > 1 {
            for class in p.classes() {
                work.push(class.iter().map(|&v| map[v]).collect());
            }
            continue;
        }
        let sb = strong_bridges(&sub)?;
        if sb.is_empty() {
            for &v in &set {
                label[v] = next;
            }
            next += 1;
            continue;
        }
        let mut cut = vec![false; sub.edge_bound()];
        for e in sb {
            cut[e] = true;
        }
        let rest = sub.restrict(|e| !cut[e]);
        for class in scc(&rest).classes() {
            work.push(class.iter().map(|&v| map[v]).collect());
        }
    }
    Ok(Partition::from_labels(&label))
}

/// Multigraph obtained by contracting every component to a supervertex.
#[derive(Clone, Debug)]
pub struct CondensedGraph {
    /// One edge per edge of the input, loops and parallels kept; origin = input edge id.
    pub graph: Digraph,
    /// Supervertex of each input vertex.
    pub h: Vec<VertexId>,
}

pub fn condense(g: &Digraph, comp: &ComponentPartition) -> CondensedGraph {
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    let edges: Vec<_> = ids.iter().map(|&e| (comp.id[g.tail(e)], comp.id[g.head(e)])).collect();
    CondensedGraph { graph: Digraph::from_parts(comp.count(), &edges, ids), h: comp.id.clone() }
}

impl CondensedGraph {
    /// Condensed edges that join different supervertices.
    pub fn cross_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.graph.edges().filter(|&(_, u, v)| u != v).map(|(e, _, _)| e)
    }
}

/// Spanning subgraph of `g` made of the per-component edge sets plus the
/// original edges behind the edges of `h_sub`.
///
/// `h_sub` must be a view of the condensed graph of `g` (its origins are ids of `g`).
pub fn expand(
    h_sub: &Digraph,
    g: &Digraph,
    comp: &ComponentPartition,
    per_component: &[Vec<EdgeId>],
) -> Result<Digraph> {
    let mut keep = vec![false; g.edge_bound()];
    for e in h_sub.edge_ids() {
        let o = h_sub.origin(e);
        if !g.is_live(o) {
            return Err(Error::InvalidEdge(o));
        }
        let (u, v) = g.endpoints(o);
        if comp.id[u] != h_sub.tail(e) || comp.id[v] != h_sub.head(e) {
            return Err(Error::InvalidEdge(o));
        }
        keep[o] = true;
    }
    for set in per_component {
        for &e in set {
            if !g.is_live(e) {
                return Err(Error::InvalidEdge(e));
            }
            keep[e] = true;
        }
    }
    Ok(g.restrict(|e| keep[e]))
}
