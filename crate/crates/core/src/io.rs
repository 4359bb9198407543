//! Graph readers (DIMACS shortest-path, SNAP edge lists) and the edge-list writer.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Digraph, EdgeId, VertexId};

/// A parsed graph with what was dropped on the way in.
#[derive(Clone, Debug)]
pub struct Ingested {
    pub graph: Digraph,
    pub loops_dropped: usize,
    pub duplicates_dropped: usize,
    /// Original label of every vertex.
    pub labels: Vec<u64>,
}

#[derive(Default)]
struct EdgeSink {
    edges: Vec<(VertexId, VertexId)>,
    seen: HashSet<(VertexId, VertexId)>,
    loops: usize,
    duplicates: usize,
}

impl EdgeSink {
    fn push(&mut self, u: VertexId, v: VertexId) {
        if u == v {
            self.loops += 1;
        } else if !self.seen.insert((u, v)) {
            self.duplicates += 1;
        } else {
            self.edges.push((u, v));
        }
    }

    fn finish(self, n: usize, labels: Vec<u64>) -> Result<Ingested> {
        Ok(Ingested {
            graph: Digraph::build(n, &self.edges, false)?,
            loops_dropped: self.loops,
            duplicates_dropped: self.duplicates,
            labels,
        })
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

/// DIMACS shortest-path format: `c` comments, `p sp n m`, arcs `a u v w`
/// with 1-based endpoints. Weights are ignored.
pub fn parse_dimacs(input: impl Read) -> Result<Ingested> {
    let mut n: Option<usize> = None;
    let mut sink = EdgeSink::default();
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        let no = i + 1;
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(parse_err(no, "second problem line"));
                }
                if tok.next() != Some("sp") {
                    return Err(parse_err(no, "expected `p sp n m`"));
                }
                n = Some(number(tok.next(), no, "vertex count")?);
                let _: usize = number(tok.next(), no, "arc count")?;
            }
            Some("a") => {
                let n = n.ok_or_else(|| parse_err(no, "arc before problem line"))?;
                let u: usize = number(tok.next(), no, "tail")?;
                let v: usize = number(tok.next(), no, "head")?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(parse_err(no, format!("endpoint {x} outside 1..={n}")));
                    }
                }
                if let Some(w) = tok.next() {
                    w.parse::<f64>().map_err(|_| parse_err(no, format!("invalid weight `{w}`")))?;
                }
                sink.push(u - 1, v - 1);
            }
            Some(other) => return Err(parse_err(no, format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing problem line"))?;
    sink.finish(n, (1..=n as u64).collect())
}

/// SNAP edge list: `#` comments, whitespace-separated `u v` pairs with
/// arbitrary non-negative labels, renumbered densely by first appearance.
pub fn parse_snap(input: impl Read) -> Result<Ingested> {
    let mut ids: HashMap<u64, VertexId> = HashMap::new();
    let mut labels = Vec::new();
    let mut sink = EdgeSink::default();
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        let no = i + 1;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut tok = body.split_whitespace();
        let a: u64 = number(tok.next(), no, "source")?;
        let b: u64 = number(tok.next(), no, "target")?;
        let mut id = |x: u64| {
            *ids.entry(x).or_insert_with(|| {
                labels.push(x);
                labels.len() - 1
            })
        };
        let (u, v) = (id(a), id(b));
        sink.push(u, v);
    }
    sink.finish(labels.len(), labels)
}

fn looks_like_dimacs(head: &str) -> bool {
    head.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("p ") || l.starts_with("a "))
}

/// Reads a graph file, choosing the format from the extension (`.gr` is
/// DIMACS) or else from the first non-comment line.
pub fn read_graph(path: &Path) -> Result<Ingested> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|x| x == "gr") || looks_like_dimacs(&text) {
        parse_dimacs(text.as_bytes())
    } else {
        parse_snap(text.as_bytes())
    }
}

/// One `u v` line per edge, 0-based, sorted.
pub fn format_edge_list(g: &Digraph, ids: &[EdgeId]) -> String {
    let mut pairs: Vec<(VertexId, VertexId)> = ids.iter().map(|&e| g.endpoints(e)).collect();
    pairs.sort_unstable();
    let mut out = String::with_capacity(pairs.len() * 12);
    for (u, v) in pairs {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Reads a 0-based `u v` list and matches each pair to a distinct edge of `g`.
pub fn parse_edge_subset(input: impl Read, g: &Digraph) -> Result<Vec<EdgeId>> {
    let mut pool: HashMap<(VertexId, VertexId), Vec<EdgeId>> = HashMap::new();
    for (e, u, v) in g.edges() {
        pool.entry((u, v)).or_default().push(e);
    }
    for ids in pool.values_mut() {
        ids.reverse();
    }
    let mut out = Vec::new();
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line?;
        let no = i + 1;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut tok = body.split_whitespace();
        let u: usize = number(tok.next(), no, "tail")?;
        let v: usize = number(tok.next(), no, "head")?;
        let e = pool
            .get_mut(&(u, v))
            .and_then(Vec::pop)
            .ok_or_else(|| parse_err(no, format!("({u}, {v}) is not an unused edge of the graph")))?;
        out.push(e);
    }
    out.sort_unstable();
    Ok(out)
}
