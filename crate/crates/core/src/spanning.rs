//! Spanning-tree pairs of flow graphs.
//!
//! Independent trees are built from a low-high order of the dominator tree,
//! computed on the edge-split graph (each edge `e = (u, v)` becomes
//! `u -> x_e -> v`). In that graph an edge vertex dominates `v` exactly when
//! its edge is a bridge, so vertex-independent trees of the split graph are
//! both vertex-independent and maximally edge-disjoint in the original.

use crate::dominators::{dominator_tree, DominatorTree, FlowGraph};
use crate::graph::{Digraph, EdgeId, VertexId, NONE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: VertexId,
    /// Edge entering each vertex; `None` for the root.
    pub parent: Vec<Option<EdgeId>>,
}

impl SpanningTree {
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.parent.iter().flatten().copied()
    }

    /// Vertices on the tree path from the root to `v`, starting at `v`.
    pub fn path(&self, g: &Digraph, v: VertexId) -> Vec<VertexId> {
        let mut out = vec![v];
        let mut x = v;
        while let Some(e) = self.parent[x] {
            x = g.tail(e);
            out.push(x);
            if out.len() > g.n() {
                break;
            }
        }
        out
    }

    /// Every non-root vertex has a live parent edge ending at it and reaches the root.
    pub fn is_spanning(&self, g: &Digraph) -> bool {
        if self.parent.len() != g.n() || self.parent[self.root].is_some() {
            return false;
        }
        for v in 0..g.n() {
            if v == self.root {
                continue;
            }
            match self.parent[v] {
                Some(e) if g.is_live(e) && g.head(e) == v => {}
                _ => return false,
            }
            if *self.path(g, v).last().unwrap() != self.root {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    EdgeDisjoint,
    Independent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePair {
    pub blue: SpanningTree,
    pub red: SpanningTree,
    pub kind: PairKind,
}

impl TreePair {
    /// Distinct edges of both trees, sorted.
    pub fn union(&self) -> Vec<EdgeId> {
        let mut all: Vec<_> = self.blue.edges().chain(self.red.edges()).collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Edges used by both trees, sorted.
    pub fn common(&self) -> Vec<EdgeId> {
        let mut c: Vec<_> = self
            .blue
            .parent
            .iter()
            .zip(&self.red.parent)
            .filter_map(|(b, r)| if b.is_some() && b == r { *b } else { None })
            .collect();
        c.sort_unstable();
        c
    }
}

/// Two spanning trees sharing only the bridges of the flow graph.
pub fn edge_disjoint_pair(fg: FlowGraph<'_>) -> TreePair {
    let dt = dominator_tree(fg);
    let mut pair = independent_pair(fg, &dt);
    pair.kind = PairKind::EdgeDisjoint;
    pair
}

/// Two independent spanning trees: for every `v` the tree paths from the start
/// share only the dominators of `v`, and the trees share only bridges.
pub fn independent_pair(fg: FlowGraph<'_>, dt: &DominatorTree) -> TreePair {
    let g = fg.graph;
    let n = g.n();
    let s = fg.start;
    debug_assert_eq!(dt.root(), s);
    let eids: Vec<EdgeId> = g.edge_ids().collect();
    let mut split_edges = Vec::with_capacity(2 * eids.len());
    for (i, &e) in eids.iter().enumerate() {
        split_edges.push((g.tail(e), n + i));
        split_edges.push((n + i, g.head(e)));
    }
    let split = Digraph::from_parts(n + eids.len(), &split_edges, vec![0; split_edges.len()]);
    let sfg = FlowGraph { graph: &split, start: s };
    let sdt = dominator_tree(sfg);
    let lh = LowHigh::compute(&split, &sdt);

    let mut blue = vec![None; n];
    let mut red = vec![None; n];
    for v in 0..n {
        let Some(d) = sdt.idom(v) else { continue };
        if d >= n {
            // The edge vertex dominating v is a bridge; both trees use it.
            blue[v] = Some(eids[d - n]);
            red[v] = Some(eids[d - n]);
            continue;
        }
        let mut low = None;
        let mut high = None;
        for &se in split.in_edges(v) {
            let x = split.tail(se);
            let Some(dx) = derived_tail(&sdt, x, v) else { continue };
            let e = eids[x - n];
            if lh.pos[dx] < lh.pos[v] {
                low = Some(low.map_or(e, |l: EdgeId| l.min(e)));
            } else {
                high = Some(high.map_or(e, |h: EdgeId| h.min(e)));
            }
        }
        blue[v] = low;
        red[v] = high;
        debug_assert!(low.is_some() && high.is_some(), "low-high order violated at {v}");
    }
    TreePair {
        blue: SpanningTree { root: s, parent: blue },
        red: SpanningTree { root: s, parent: red },
        kind: PairKind::Independent,
    }
}

/// Derived tail of edge `(x, v)`: `d(v)` itself, the child of `d(v)`
/// dominating `x`, or `None` when `v` dominates `x`.
fn derived_tail(dt: &DominatorTree, x: VertexId, v: VertexId) -> Option<VertexId> {
    let d = dt.idom(v)?;
    if x == d {
        return Some(d);
    }
    if dt.dominates(v, x) {
        return None;
    }
    // Children are sorted by id, which is also their preorder.
    let ch = dt.children(d);
    let i = ch.partition_point(|&c| dt.pre(c) <= dt.pre(x));
    Some(ch[i - 1])
}

/// A preorder of the dominator tree in which every vertex `v` either has an
/// edge from `d(v)` in the derived graph, or derived in-neighbours on both
/// sides of it.
struct LowHigh {
    pos: Vec<usize>,
}

impl LowHigh {
    fn compute(g: &Digraph, dt: &DominatorTree) -> LowHigh {
        let n = g.n();
        let mut local_children: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        let mut local = vec![NONE; n];
        for &p in dt.preorder() {
            let kids = dt.children(p);
            if kids.is_empty() {
                continue;
            }
            // Local derived graph on p and its children; index 0 is p.
            let verts: Vec<VertexId> = std::iter::once(p).chain(kids.iter().copied()).collect();
            for (i, &v) in verts.iter().enumerate() {
                local[v] = i;
            }
            let k = verts.len();
            let mut succs: Vec<Vec<usize>> = vec![Vec::new(); k];
            for (i, &v) in verts.iter().enumerate().skip(1) {
                for &e in g.in_edges(v) {
                    if let Some(u) = derived_tail(dt, g.tail(e), v) {
                        let j = local[u];
                        if j != i {
                            succs[j].push(i);
                        }
                    }
                }
            }
            for s in &mut succs {
                s.sort_unstable();
                s.dedup();
            }
            local_children[p] = local_order(&succs).into_iter().skip(1).map(|i| verts[i]).collect();
            for &v in &verts {
                local[v] = NONE;
            }
        }

        let mut pos = vec![NONE; n];
        let mut count = 0;
        let root = dt.root();
        let mut stack = vec![(root, 0usize)];
        pos[root] = count;
        count += 1;
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < local_children[v].len() {
                let c = local_children[v][top.1];
                top.1 += 1;
                pos[c] = count;
                count += 1;
                stack.push((c, 0));
            } else {
                stack.pop();
            }
        }
        LowHigh { pos }
    }
}

/// Low-high order of a flat local graph (vertex 0 is the root and immediate
/// dominator of all others), built from the back.
///
/// A vertex may be moved from the remaining set `U` to the front of the
/// suffix when it is entered from the root or from the suffix, and removing
/// it leaves `U` reachable from the root. Such a vertex always exists: any
/// deepest qualifying vertex in the dominator tree of `U` is a leaf, or the
/// graph with root edges added to the qualifying vertices would not be flat.
/// Removals preserve that flatness.
fn local_order(succs: &[Vec<usize>]) -> Vec<usize> {
    let k = succs.len();
    let mut alive = vec![true; k];
    let mut supported = vec![false; k];
    for &w in &succs[0] {
        supported[w] = true;
    }
    let mut suffix = Vec::with_capacity(k);
    let mut remaining = k - 1;
    let mut tparent = vec![NONE; k];
    let mut nchild = vec![0usize; k];
    let mut queue = Vec::new();

    while remaining > 0 {
        // Spanning search tree of the remaining vertices that expands
        // supported vertices only when nothing else is left, so that they
        // tend to end up as leaves.
        tparent.iter_mut().for_each(|x| *x = NONE);
        nchild.iter_mut().for_each(|x| *x = 0);
        let mut seen = vec![false; k];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut deferred = Vec::new();
        loop {
            let v = match stack.pop() {
                Some(v) => v,
                None => match deferred.pop() {
                    Some(v) => v,
                    None => break,
                },
            };
            for &w in &succs[v] {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    tparent[w] = v;
                    nchild[v] += 1;
                    if supported[w] {
                        deferred.push(w);
                    } else {
                        stack.push(w);
                    }
                }
            }
        }
        debug_assert!((0..k).all(|v| !alive[v] || seen[v]));

        queue.clear();
        queue.extend((1..k).filter(|&v| alive[v] && supported[v] && nchild[v] == 0));
        let before = remaining;
        while let Some(v) = queue.pop() {
            if !alive[v] || nchild[v] != 0 || !supported[v] {
                continue;
            }
            remove(v, &mut alive, &mut supported, &mut suffix, succs, &mut queue, &nchild);
            remaining -= 1;
            let t = tparent[v];
            nchild[t] -= 1;
            if t != 0 && nchild[t] == 0 && supported[t] {
                queue.push(t);
            }
        }
        if remaining == before {
            // No qualifying tree leaf: fall back to a dominator-tree leaf.
            let v = dominator_leaf(succs, &alive, &supported).expect("local graph is not flat");
            remove(v, &mut alive, &mut supported, &mut suffix, succs, &mut queue, &nchild);
            remaining -= 1;
        }
    }
    let mut out = Vec::with_capacity(k);
    out.push(0);
    out.extend(suffix.into_iter().rev());
    out
}

fn remove(
    v: usize,
    alive: &mut [bool],
    supported: &mut [bool],
    suffix: &mut Vec<usize>,
    succs: &[Vec<usize>],
    queue: &mut Vec<usize>,
    nchild: &[usize],
) {
    alive[v] = false;
    suffix.push(v);
    for &w in &succs[v] {
        if alive[w] && !supported[w] {
            supported[w] = true;
            if nchild[w] == 0 {
                queue.push(w);
            }
        }
    }
}

/// A supported vertex that dominates no other remaining vertex.
fn dominator_leaf(succs: &[Vec<usize>], alive: &[bool], supported: &[bool]) -> Option<usize> {
    let k = succs.len();
    let ids: Vec<usize> = (0..k).filter(|&v| alive[v]).collect();
    let mut index = vec![NONE; k];
    for (i, &v) in ids.iter().enumerate() {
        index[v] = i;
    }
    let mut edges = Vec::new();
    for &v in &ids {
        for &w in &succs[v] {
            if alive[w] {
                edges.push((index[v], index[w]));
            }
        }
    }
    let h = Digraph::from_parts(ids.len(), &edges, vec![0; edges.len()]);
    let dt = dominator_tree(FlowGraph { graph: &h, start: 0 });
    (1..ids.len()).find(|&i| supported[ids[i]] && dt.children(i).is_empty()).map(|i| ids[i])
}

/// Checks that both trees span the flow graph and that, for every vertex,
/// the two root paths meet exactly in its dominators.
pub fn verify_independent(fg: FlowGraph<'_>, pair: &TreePair, dt: &DominatorTree) -> bool {
    let g = fg.graph;
    if !pair.blue.is_spanning(g) || !pair.red.is_spanning(g) {
        return false;
    }
    let mut mark = vec![usize::MAX; g.n()];
    for v in 0..g.n() {
        for x in pair.blue.path(g, v) {
            mark[x] = v;
        }
        let mut shared: Vec<VertexId> = pair.red.path(g, v).into_iter().filter(|&x| mark[x] == v).collect();
        let mut doms = dt.dominators(v);
        shared.sort_unstable();
        doms.sort_unstable();
        if shared != doms {
            return false;
        }
    }
    true
}

/// DFS spanning tree that explores preferred out-edges before the others,
/// each group in edge-id order.
pub fn edge_prioritized_dfs(fg: FlowGraph<'_>, preferred: &[bool]) -> SpanningTree {
    let g = fg.graph;
    let is_pref = |e: EdgeId| preferred.get(e).copied().unwrap_or(false);
    let mut parent = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[fg.start] = true;
    // Cursor runs twice over the out-list: preferred pass, then the rest.
    let mut stack = vec![(fg.start, 0usize)];
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        let out = g.out_edges(v);
        let len = out.len();
        if top.1 >= 2 * len {
            stack.pop();
            continue;
        }
        let i = top.1;
        top.1 += 1;
        let e = out[i % len];
        if (i < len) != is_pref(e) {
            continue;
        }
        let w = g.head(e);
        if !seen[w] {
            seen[w] = true;
            parent[w] = Some(e);
            stack.push((w, 0));
        }
    }
    SpanningTree { root: fg.start, parent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominators::analyze_flow;
    use crate::fixtures;

    fn pair_for(g: &Digraph, s: VertexId) -> (TreePair, DominatorTree) {
        let fg = FlowGraph::new(g, s).unwrap();
        let dt = dominator_tree(fg);
        (independent_pair(fg, &dt), dt)
    }

    #[test]
    fn cycle_trees_coincide() {
        let g = fixtures::g2();
        let fg = FlowGraph::new(&g, 0).unwrap();
        let p = edge_disjoint_pair(fg);
        assert_eq!(p.blue, p.red);
        assert_eq!(p.common(), vec![0, 1]);
    }

    #[test]
    fn triangle_trees_disjoint() {
        let g = fixtures::g1();
        let (p, dt) = pair_for(&g, 0);
        assert!(p.common().is_empty());
        assert!(verify_independent(FlowGraph::new(&g, 0).unwrap(), &p, &dt));
    }

    #[test]
    fn g4_shares_exactly_the_bridges() {
        let g = fixtures::g4();
        let (p, _) = pair_for(&g, 0);
        let (_, br) = analyze_flow(&g, 0).unwrap();
        assert_eq!(p.common(), br.edges);
    }

    #[test]
    fn small_diamond() {
        // s=0, a=1, b=2: s->a, s->b, a->b, b->a
        let g = Digraph::build(3, &[(0, 1), (0, 2), (1, 2), (2, 1)], false).unwrap();
        let (p, dt) = pair_for(&g, 0);
        assert!(verify_independent(FlowGraph::new(&g, 0).unwrap(), &p, &dt));
        assert_ne!(p.blue.parent[2], p.red.parent[2]);
    }

    #[test]
    fn same_tree_twice_is_not_independent() {
        let g = fixtures::g1();
        let fg = FlowGraph::new(&g, 0).unwrap();
        let dt = dominator_tree(fg);
        let t = edge_prioritized_dfs(fg, &[]);
        let pair = TreePair { blue: t.clone(), red: t, kind: PairKind::Independent };
        assert!(!verify_independent(fg, &pair, &dt));
    }

    #[test]
    fn prioritized_dfs_prefers_marked_edges() {
        let g = fixtures::g1();
        let fg = FlowGraph::new(&g, 0).unwrap();
        // Preferred cycle 0->2->1->0 uses ids 5, 3, 1.
        let mut pref = vec![false; 6];
        for e in [5, 3, 1] {
            pref[e] = true;
        }
        let t = edge_prioritized_dfs(fg, &pref);
        assert!(t.edges().all(|e| pref[e]));
        let plain = edge_prioritized_dfs(fg, &[]);
        assert_eq!(plain.parent, vec![None, Some(0), Some(2)]);

        let g4 = fixtures::g4();
        let mut pref = vec![true; 6];
        pref.extend([false; 2]);
        let t = edge_prioritized_dfs(FlowGraph::new(&g4, 0).unwrap(), &pref);
        assert_eq!(t.parent, vec![None, Some(0), Some(1), Some(2), Some(3), Some(4)]);
    }

    #[test]
    fn random_pairs_are_independent() {
        for seed in 0..300 {
            let n = 2 + (seed as usize % 30);
            let g = fixtures::random_strongly_connected(n, n + (seed as usize % 3) * n, seed);
            for s in [0, n - 1] {
                let (p, dt) = pair_for(&g, s);
                assert!(verify_independent(FlowGraph::new(&g, s).unwrap(), &p, &dt), "seed {seed} s {s}");
                let (_, br) = analyze_flow(&g, s).unwrap();
                assert_eq!(p.common(), br.edges);
            }
        }
    }
}
