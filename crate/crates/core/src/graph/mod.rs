//! Multigraphs, path decompositions, exact graph pathwidth, cycle matroids
//! and umbrella graphs.

mod decomposition;
mod umbrella;

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{Field, GfMatrix};
use crate::matroid::{MatroidError, VectorMatroid};
use crate::text::{content_lines, ParseError};

pub use decomposition::{
    graph_pathwidth, graph_pathwidth_with_cap, validate_path_decomposition, vertex_separation,
    PathDecomposition, GRAPH_VERTEX_CAP,
};
pub use umbrella::{make_umbrella, umbrella_ordering};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("duplicate edge label `{0}`")]
    DuplicateEdgeLabel(String),
    #[error("not a path decomposition: {0}")]
    NotADecomposition(String),
    #[error("{count} vertices exceeds the exact limit of {cap}")]
    TooManyVertices { count: usize, cap: usize },
    #[error("an umbrella needs a circuit on at least 3 vertices, got m = {0}")]
    CircuitTooSmall(usize),
    #[error("not an umbrella: {0}")]
    NotAnUmbrella(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: String,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint other than `w`.
    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

/// A graph with loops and parallel edges. Edges keep insertion order, which
/// is also the column order of the cycle matroid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize) -> Self {
        MultiGraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Builds a graph whose edges get the default labels `1..m`.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = MultiGraph::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    /// Adds an edge labelled by its 1-based position; returns its index.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        let mut n = self.edges.len() + 1;
        let taken: HashSet<&str> = self.edges.iter().map(|e| e.label.as_str()).collect();
        while taken.contains(n.to_string().as_str()) {
            n += 1;
        }
        self.add_labelled_edge(u, v, n.to_string())
    }

    pub fn add_labelled_edge(
        &mut self,
        u: usize,
        v: usize,
        label: impl Into<String>,
    ) -> Result<usize, GraphError> {
        for w in [u, v] {
            if w >= self.vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    count: self.vertex_count,
                });
            }
        }
        let label = label.into();
        if self.edges.iter().any(|e| e.label == label) {
            return Err(GraphError::DuplicateEdgeLabel(label));
        }
        self.edges.push(Edge { u, v, label });
        Ok(self.edges.len() - 1)
    }

    /// Adds a vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn edge_labels(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.label.clone()).collect()
    }

    pub fn edge_position(&self, label: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.label == label)
    }

    /// Whether `u` and `v` are distinct and joined by at least one edge.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v
            && self
                .edges
                .iter()
                .any(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
    }

    /// Neighbour sets, loops ignored.
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }

    /// Vertices incident with at least one of the given edges, sorted.
    pub fn incident_vertices(&self, edges: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut vs: Vec<usize> = edges
            .into_iter()
            .flat_map(|i| [self.edges[i].u, self.edges[i].v])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Number of connected components; isolated vertices count.
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut count = self.vertex_count;
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// Removes vertex `w` and its edges; higher vertices shift down by one.
    pub fn delete_vertex(&self, w: usize) -> MultiGraph {
        let shift = |x: usize| if x > w { x - 1 } else { x };
        MultiGraph {
            vertex_count: self.vertex_count - 1,
            edges: self
                .edges
                .iter()
                .filter(|e| e.u != w && e.v != w)
                .map(|e| Edge {
                    u: shift(e.u),
                    v: shift(e.v),
                    label: e.label.clone(),
                })
                .collect(),
        }
    }

    /// One line with the vertex count, then `u v [label]` per edge. Labels
    /// are written only where they differ from the 1-based position.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count);
        for (i, e) in self.edges.iter().enumerate() {
            if e.label == (i + 1).to_string() {
                let _ = writeln!(out, "{} {}", e.u, e.v);
            } else {
                let _ = writeln!(out, "{} {} {}", e.u, e.v, e.label);
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<MultiGraph, ParseError> {
        let mut lines = content_lines(text);
        let (ln, first) = lines
            .next()
            .ok_or_else(|| ParseError::new(0, "missing vertex count"))?;
        let n: usize = first
            .parse()
            .map_err(|_| ParseError::new(ln, format!("bad vertex count `{first}`")))?;
        let mut g = MultiGraph::new(n);
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() < 2 || parts.len() > 3 {
                return Err(ParseError::new(ln, "expected `u v [label]`"));
            }
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| ParseError::new(ln, format!("bad vertex `{s}`")))
            };
            let (u, v) = (parse(parts[0])?, parse(parts[1])?);
            let label = parts
                .get(2)
                .map(|s| s.to_string())
                .unwrap_or_else(|| (g.edges.len() + 1).to_string());
            g.add_labelled_edge(u, v, label)
                .map_err(|e| ParseError::new(ln, e.to_string()))?;
        }
        Ok(g)
    }
}

/// The cycle matroid via the oriented incidence matrix: edge `(u, v)` with
/// `u < v` has `+1` in row `u` and `-1` in row `v`; loops are zero columns.
pub fn cycle_matroid(g: &MultiGraph, field: &Field) -> Result<VectorMatroid, MatroidError> {
    let mut a = GfMatrix::zeros(field, g.vertex_count(), g.edge_count());
    for (j, e) in g.edges().iter().enumerate() {
        if e.is_loop() {
            continue;
        }
        let (lo, hi) = (e.u.min(e.v), e.u.max(e.v));
        a.set(lo, j, 1);
        a.set(hi, j, field.minus_one());
    }
    VectorMatroid::with_labels(a, g.edge_labels())
}

pub fn complete_graph(n: usize) -> MultiGraph {
    let mut g = MultiGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).expect("in range");
        }
    }
    g
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    let mut g = MultiGraph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).expect("in range");
        }
    }
    g
}

pub fn path_graph(n: usize) -> MultiGraph {
    let mut g = MultiGraph::new(n);
    for u in 1..n {
        g.add_edge(u - 1, u).expect("in range");
    }
    g
}

pub fn cycle_graph(n: usize) -> MultiGraph {
    let mut g = path_graph(n);
    if n >= 2 {
        g.add_edge(n - 1, 0).expect("in range");
    }
    g
}
