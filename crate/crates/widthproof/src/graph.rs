//! Loopless multigraphs with explicit vertex and edge identities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = u64;
pub type EdgeId = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    MissingVertex(VertexId),
    #[error("loop at vertex {0}: edges need two distinct endpoints")]
    Loop(VertexId),
    #[error("edge {0} already exists")]
    DuplicateEdge(EdgeId),
    #[error("malformed adjacency text at line {line}: {msg}")]
    Adjacency { line: usize, msg: String },
}

/// A loopless multigraph. Every edge id carries its two endpoints
/// (stored with the smaller id first), which is the incidence relation
/// restricted to loopless edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
}

fn smallest_unused<I: Iterator<Item = u64>>(ids: I) -> u64 {
    // ids come sorted ascending
    let mut next = 1;
    for id in ids {
        if id < next {
            continue;
        }
        if id == next {
            next += 1;
        } else {
            break;
        }
    }
    next
}

impl MultiGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// |V| + |E|
    pub fn size(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(a, b))| (e, a, b))
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    /// Adds an isolated vertex with the smallest positive unused id.
    pub fn add_vertex(&mut self) -> VertexId {
        let v = smallest_unused(self.vertices.iter().copied());
        self.vertices.insert(v);
        v
    }

    /// Adds an edge with the smallest positive unused edge id.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        let e = smallest_unused(self.edges.keys().copied());
        self.insert_edge(e, u, v)?;
        Ok(e)
    }

    /// Inserts a vertex with a caller-chosen id (no-op when present).
    pub fn insert_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    /// Inserts an edge with a caller-chosen id.
    pub fn insert_edge(&mut self, e: EdgeId, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::Loop(u));
        }
        for x in [u, v] {
            if !self.vertices.contains(&x) {
                return Err(GraphError::MissingVertex(x));
            }
        }
        if self.edges.contains_key(&e) {
            return Err(GraphError::DuplicateEdge(e));
        }
        self.edges.insert(e, (u.min(v), u.max(v)));
        Ok(())
    }

    /// Left copy gets ids 2x, right copy 2x+1, for vertices and edges alike.
    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let mut out = MultiGraph::empty();
        for (g, off) in [(self, 0), (other, 1)] {
            for &v in &g.vertices {
                out.vertices.insert(2 * v + off);
            }
            for (&e, &(a, b)) in &g.edges {
                out.edges.insert(2 * e + off, (2 * a + off, 2 * b + off));
            }
        }
        out
    }

    /// Applies a vertex renaming to every incidence; vertices not in the
    /// map keep their id. Used by the join gluing.
    pub(crate) fn rename_vertices(&self, map: &BTreeMap<VertexId, VertexId>) -> MultiGraph {
        let f = |v: VertexId| *map.get(&v).unwrap_or(&v);
        let vertices = self.vertices.iter().map(|&v| f(v)).collect();
        let edges = self
            .edges
            .iter()
            .map(|(&e, &(a, b))| {
                let (x, y) = (f(a), f(b));
                (e, (x.min(y), x.max(y)))
            })
            .collect();
        MultiGraph { vertices, edges }
    }

    /// Number of incident edge ids; parallel edges count separately.
    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        if !self.vertices.contains(&v) {
            return Err(GraphError::MissingVertex(v));
        }
        Ok(self.edges.values().filter(|&&(a, b)| a == v || b == v).count())
    }

    pub fn degrees(&self) -> BTreeMap<VertexId, usize> {
        let mut deg: BTreeMap<VertexId, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for &(a, b) in self.edges.values() {
            *deg.get_mut(&a).unwrap() += 1;
            *deg.get_mut(&b).unwrap() += 1;
        }
        deg
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.degrees().values().copied().max().unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.values().all(|p| seen.insert(*p))
    }

    /// Sorted neighbour lists, parallel edges repeated.
    pub fn adjacency(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in self.edges.values() {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        adj
    }

    /// One line per vertex: `v: [n1,n2,...]`.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for (v, ns) in self.adjacency() {
            let list: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
            let _ = writeln!(out, "{}: [{}]", v, list.join(","));
        }
        out
    }

    /// Parses the adjacency text format. Each edge must appear in both
    /// endpoint lists with the same multiplicity; edge ids are assigned in
    /// order of first appearance.
    pub fn from_adjacency_text(text: &str) -> Result<MultiGraph, GraphError> {
        let mut lists: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| GraphError::Adjacency { line: i + 1, msg: msg.to_string() };
            let (head, rest) = line.split_once(':').ok_or_else(|| bad("expected `v: [..]`"))?;
            let v: VertexId = head.trim().parse().map_err(|_| bad("bad vertex id"))?;
            let rest = rest.trim();
            let inner = rest
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| bad("expected a bracketed list"))?;
            let mut ns = Vec::new();
            for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                ns.push(tok.parse().map_err(|_| bad("bad neighbour id"))?);
            }
            if lists.insert(v, ns).is_some() {
                return Err(bad("vertex listed twice"));
            }
        }
        let mut g = MultiGraph::empty();
        for &v in lists.keys() {
            g.insert_vertex(v);
        }
        let mut count: BTreeMap<(VertexId, VertexId), (usize, usize)> = BTreeMap::new();
        for (&v, ns) in &lists {
            for &n in ns {
                if n == v {
                    return Err(GraphError::Loop(v));
                }
                if !lists.contains_key(&n) {
                    return Err(GraphError::MissingVertex(n));
                }
                let key = (v.min(n), v.max(n));
                let c = count.entry(key).or_default();
                if v < n {
                    c.0 += 1;
                } else {
                    c.1 += 1;
                }
            }
        }
        for (&(a, b), &(x, y)) in &count {
            if x != y {
                return Err(GraphError::Adjacency {
                    line: 0,
                    msg: format!("asymmetric adjacency between {a} and {b}"),
                });
            }
            for _ in 0..x {
                g.add_edge(a, b)?;
            }
        }
        Ok(g)
    }

    /// Checks the structural invariants (endpoints present and distinct).
    pub fn check_invariants(&self) -> bool {
        self.edges
            .values()
            .all(|&(a, b)| a != b && self.vertices.contains(&a) && self.vertices.contains(&b))
    }
}
