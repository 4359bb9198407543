//! Dominator trees (semi-NCA), flow-graph bridges and strong bridges.

use crate::error::{Error, Result};
use crate::graph::{is_strongly_connected, Digraph, EdgeId, VertexId, NONE};

/// A digraph together with a start vertex from which every vertex is reachable.
#[derive(Clone, Copy, Debug)]
pub struct FlowGraph<'a> {
    pub graph: &'a Digraph,
    pub start: VertexId,
}

impl<'a> FlowGraph<'a> {
    pub fn new(graph: &'a Digraph, start: VertexId) -> Result<Self> {
        if start >= graph.n() {
            return Err(Error::VertexOutOfRange { vertex: start, n: graph.n() });
        }
        let seen = reachable(graph, start);
        if let Some(v) = seen.iter().position(|&r| !r) {
            return Err(Error::Unreachable(v));
        }
        Ok(FlowGraph { graph, start })
    }
}

pub(crate) fn reachable(g: &Digraph, s: VertexId) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(v) = stack.pop() {
        for &e in g.out_edges(v) {
            let w = g.head(e);
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatorTree {
    root: VertexId,
    idom: Vec<VertexId>,
    children: Vec<Vec<VertexId>>,
    pre: Vec<usize>,
    size: Vec<usize>,
    order: Vec<VertexId>,
}

impl DominatorTree {
    pub fn root(&self) -> VertexId {
        self.root
    }

    /// Immediate dominator, `None` for the root.
    pub fn idom(&self, v: VertexId) -> Option<VertexId> {
        (self.idom[v] != NONE).then_some(self.idom[v])
    }

    /// Children in increasing vertex order.
    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    /// Vertices in preorder of the dominator tree.
    pub fn preorder(&self) -> &[VertexId] {
        &self.order
    }

    pub fn pre(&self, v: VertexId) -> usize {
        self.pre[v]
    }

    pub fn subtree_size(&self, v: VertexId) -> usize {
        self.size[v]
    }

    /// True iff `u` dominates `w` (reflexive).
    pub fn dominates(&self, u: VertexId, w: VertexId) -> bool {
        self.pre[u] <= self.pre[w] && self.pre[w] < self.pre[u] + self.size[u]
    }

    /// Dominators of `w` from `w` up to the root.
    pub fn dominators(&self, w: VertexId) -> Vec<VertexId> {
        let mut out = vec![w];
        let mut x = w;
        while let Some(p) = self.idom(x) {
            out.push(p);
            x = p;
        }
        out
    }
}

/// Semi-NCA dominator computation. Adjacency is scanned in edge-id order.
pub fn dominator_tree(fg: FlowGraph<'_>) -> DominatorTree {
    let g = fg.graph;
    let n = g.n();
    let s = fg.start;

    // Iterative DFS: preorder numbers and DFS parents (in preorder space).
    let mut num = vec![NONE; n];
    let mut vertex = Vec::with_capacity(n);
    let mut parent = Vec::with_capacity(n);
    let mut stack: Vec<(VertexId, usize)> = vec![(s, 0)];
    num[s] = 0;
    vertex.push(s);
    parent.push(0);
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        let out = g.out_edges(v);
        if top.1 < out.len() {
            let w = g.head(out[top.1]);
            top.1 += 1;
            if num[w] == NONE {
                num[w] = vertex.len();
                parent.push(num[v]);
                vertex.push(w);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    let k = vertex.len();

    let mut semi: Vec<usize> = (0..k).collect();
    let mut label: Vec<usize> = (0..k).collect();
    let mut ancestor = parent.clone();
    let mut path = Vec::new();
    for w in (1..k).rev() {
        for &e in g.in_edges(vertex[w]) {
            let v = num[g.tail(e)];
            if v == NONE {
                continue;
            }
            let u = if v <= w {
                v
            } else {
                // Compress the processed ancestor chain of v.
                path.clear();
                let mut x = v;
                while ancestor[x] > w {
                    path.push(x);
                    x = ancestor[x];
                }
                for &y in path.iter().rev() {
                    let a = ancestor[y];
                    if a > w {
                        if semi[label[a]] < semi[label[y]] {
                            label[y] = label[a];
                        }
                        ancestor[y] = ancestor[a];
                    }
                }
                label[v]
            };
            if semi[u] < semi[w] {
                semi[w] = semi[u];
            }
        }
        label[w] = w;
    }
    let mut idom_pre = parent;
    for w in 1..k {
        while idom_pre[w] > semi[w] {
            idom_pre[w] = idom_pre[idom_pre[w]];
        }
    }

    let mut idom = vec![NONE; n];
    let mut children = vec![Vec::new(); n];
    for w in 1..k {
        let v = vertex[w];
        let p = vertex[idom_pre[w]];
        idom[v] = p;
        children[p].push(v);
    }
    for c in &mut children {
        c.sort_unstable();
    }
    let (pre, size, order) = tree_numbering(n, s, &children);
    DominatorTree { root: s, idom, children, pre, size, order }
}

fn tree_numbering(n: usize, root: VertexId, children: &[Vec<VertexId>]) -> (Vec<usize>, Vec<usize>, Vec<VertexId>) {
    let mut pre = vec![NONE; n];
    let mut size = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![(root, 0usize)];
    pre[root] = 0;
    order.push(root);
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        if top.1 < children[v].len() {
            let c = children[v][top.1];
            top.1 += 1;
            pre[c] = order.len();
            order.push(c);
            stack.push((c, 0));
        } else {
            size[v] = order.len() - pre[v];
            stack.pop();
        }
    }
    (pre, size, order)
}

/// Bridges of a flow graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeSet {
    /// Bridge ids, sorted.
    pub edges: Vec<EdgeId>,
    /// Per vertex, the bridge entering it (if any).
    pub into: Vec<Option<EdgeId>>,
}

impl BridgeSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

/// `(u, w)` is a bridge iff `u = idom(w)` and every other edge entering `w`
/// leaves a vertex dominated by `w`.
pub fn flow_bridges(fg: FlowGraph<'_>, dt: &DominatorTree) -> BridgeSet {
    let g = fg.graph;
    let mut into = vec![None; g.n()];
    let mut edges = Vec::new();
    for (w, slot) in into.iter_mut().enumerate() {
        let Some(u) = dt.idom(w) else { continue };
        let mut outside = g.in_edges(w).iter().copied().filter(|&e| !dt.dominates(w, g.tail(e)));
        if let (Some(e), None) = (outside.next(), outside.next()) {
            if g.tail(e) == u {
                *slot = Some(e);
                edges.push(e);
            }
        }
    }
    edges.sort_unstable();
    BridgeSet { edges, into }
}

/// Dominator tree and bridges of `g` rooted at `s`.
pub fn analyze_flow(g: &Digraph, s: VertexId) -> Result<(DominatorTree, BridgeSet)> {
    let fg = FlowGraph::new(g, s)?;
    let dt = dominator_tree(fg);
    let br = flow_bridges(fg, &dt);
    Ok((dt, br))
}

/// Strong bridges of a strongly connected graph, sorted.
pub fn strong_bridges(g: &Digraph) -> Result<Vec<EdgeId>> {
    if !is_strongly_connected(g) {
        return Err(Error::NotStronglyConnected);
    }
    if g.n() <= 1 {
        return Ok(Vec::new());
    }
    let (_, fwd) = analyze_flow(g, 0)?;
    let (_, bwd) = analyze_flow(&g.reverse(), 0)?;
    let mut all: Vec<EdgeId> = fwd.edges.into_iter().chain(bwd.edges).collect();
    all.sort_unstable();
    all.dedup();
    Ok(all)
}
