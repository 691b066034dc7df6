//! Simple undirected graphs and the edge-list file format.
//!
//! Edge files hold one `u v` pair per line, 0-based ids, `u < v`. Text after
//! `#` is ignored, except that a comment of the form `# n=<count>` fixes the
//! vertex count (otherwise it is one more than the largest id seen). Data
//! with 1-based ids must be shifted down by one before loading.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::degseq::Degree;

/// Normalized edge `(min, max)`.
pub type Edge = (usize, usize);

pub fn normalize(a: usize, b: usize) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Simple graph stored as an indexable edge array plus adjacency lists.
/// The edge array keeps insertion order.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    slots: HashMap<Edge, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    /// Same vertex count and same edge set, regardless of insertion order.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self.edges.iter().all(|e| other.slots.contains_key(e))
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            slots: HashMap::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::new(n);
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        for vertex in [a, b] {
            if vertex >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex, n: self.n });
            }
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        let e = normalize(a, b);
        if self.slots.contains_key(&e) {
            return Err(GraphError::DuplicateEdge(e.0, e.1));
        }
        self.slots.insert(e, self.edges.len());
        self.edges.push(e);
        self.adjacency[a].push(b);
        self.adjacency[b].push(a);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.slots.contains_key(&normalize(a, b))
    }

    /// Neighbors of `v` in no particular order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<Degree> {
        self.adjacency.iter().map(|a| a.len() as Degree).collect()
    }

    /// Neighbor lists sorted ascending.
    pub fn sorted_adjacency(&self) -> Vec<Vec<usize>> {
        self.adjacency
            .iter()
            .map(|a| {
                let mut a = a.clone();
                a.sort_unstable();
                a
            })
            .collect()
    }

    /// Replaces the edge at `index` with `(a, b)`, keeping its slot. The
    /// caller guarantees the new edge is not a loop and not present.
    pub(crate) fn replace_edge(&mut self, index: usize, a: usize, b: usize) {
        let old = self.edges[index];
        let new = normalize(a, b);
        debug_assert!(a != b && !self.slots.contains_key(&new));
        self.slots.remove(&old);
        detach(&mut self.adjacency[old.0], old.1);
        detach(&mut self.adjacency[old.1], old.0);
        self.slots.insert(new, index);
        self.edges[index] = new;
        self.adjacency[a].push(b);
        self.adjacency[b].push(a);
    }

    /// Same graph with every vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        Self::from_edges(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
            .expect("a permutation preserves simplicity")
    }

    /// Serializes in the edge-file format, with a `# n=` header so isolated
    /// trailing vertices survive a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edges.len() * 12 + 16);
        self.write_edge_list(&mut out).expect("writing to a String");
        out
    }

    pub fn write_edge_list(&self, out: &mut impl fmt::Write) -> fmt::Result {
        writeln!(out, "# n={} m={}", self.n, self.edges.len())?;
        for &(a, b) in &self.edges {
            writeln!(out, "{a} {b}")?;
        }
        Ok(())
    }

    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut declared_n = None;
        let mut pairs = Vec::new();
        let mut max_id = None;
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let (body, comment) = match line.split_once('#') {
                Some((b, c)) => (b, Some(c)),
                None => (line, None),
            };
            if let Some(c) = comment {
                if let Some(n) = header_vertex_count(c) {
                    declared_n = Some(n);
                }
            }
            let mut fields = body.split_whitespace();
            let Some(first) = fields.next() else { continue };
            let parse = |tok: Option<&str>| -> Result<usize, GraphError> {
                let tok = tok.ok_or_else(|| GraphError::Parse {
                    line: line_no,
                    reason: "expected two vertex ids".into(),
                })?;
                tok.parse().map_err(|_| GraphError::Parse {
                    line: line_no,
                    reason: format!("bad vertex id {tok:?}"),
                })
            };
            let a = parse(Some(first))?;
            let b = parse(fields.next())?;
            if fields.next().is_some() {
                return Err(GraphError::Parse {
                    line: line_no,
                    reason: "trailing fields".into(),
                });
            }
            max_id = Some(max_id.unwrap_or(0).max(a).max(b));
            pairs.push((a, b));
        }
        let n = declared_n.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
        Self::from_edges(n, pairs)
    }
}

fn header_vertex_count(comment: &str) -> Option<usize> {
    comment
        .split_whitespace()
        .find_map(|field| field.strip_prefix("n="))
        .and_then(|v| v.parse().ok())
}

fn detach(list: &mut Vec<usize>, v: usize) {
    if let Some(pos) = list.iter().position(|&x| x == v) {
        list.swap_remove(pos);
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_edge_list(f)
    }
}
