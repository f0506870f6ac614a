//! The graph-to-matroid reduction: doubling every adjacency, adding an apex
//! joined doubly to every vertex, and translating between path
//! decompositions of the graph and element orderings of the cycle matroid.

mod ordering;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Field;
use crate::graph::{cycle_matroid, GraphError, MultiGraph};
use crate::matroid::{MatroidError, VectorMatroid};

pub use ordering::{
    block_partition, check_block_closure, decomp_to_ordering, is_normal, normalize,
    ordering_to_decomp, reorder, strip_apex, Block,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("graph is not in doubled form: {0}")]
    NotDoubledForm(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(GraphError),
    #[error("ordering is not normal: {0}")]
    NotNormal(String),
    #[error("no apex edge can be pulled forward at step {step}; the apex graph is malformed")]
    NoApexCandidate { step: usize },
    #[error("ordering does not have the block shape: {0}")]
    WrongShape(String),
    #[error("not a permutation of the edges: {0}")]
    NotAPermutation(String),
    #[error("bad sidecar document: {0}")]
    BadSidecar(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// The four edge classes, in the preference order used when re-ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    #[serde(rename = "L_x")]
    ApexLeft,
    #[serde(rename = "L_G")]
    BaseLeft,
    #[serde(rename = "R_G")]
    BaseRight,
    #[serde(rename = "R_x")]
    ApexRight,
}

impl EdgeClass {
    pub fn is_left(self) -> bool {
        matches!(self, EdgeClass::ApexLeft | EdgeClass::BaseLeft)
    }

    pub fn is_apex(self) -> bool {
        matches!(self, EdgeClass::ApexLeft | EdgeClass::ApexRight)
    }
}

/// The doubled graph with its apex: every adjacent pair carries exactly two
/// edges, a left one and its right twin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexGraph {
    pub graph: MultiGraph,
    pub apex: usize,
    /// Class of each edge, by edge position.
    pub classes: Vec<EdgeClass>,
    /// Position of each edge's parallel twin.
    pub twin: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SidecarEdge {
    label: String,
    u: usize,
    v: usize,
    class: EdgeClass,
    twin: String,
}

#[derive(Serialize, Deserialize)]
struct Sidecar {
    vertex_count: usize,
    apex: usize,
    edges: Vec<SidecarEdge>,
}

impl ApexGraph {
    pub fn edge_count(&self) -> usize {
        self.classes.len()
    }

    /// Vertices other than the apex.
    pub fn base_vertex_count(&self) -> usize {
        self.graph.vertex_count() - 1
    }

    /// Edge positions of a class, increasing.
    pub fn class_members(&self, class: EdgeClass) -> Vec<usize> {
        (0..self.edge_count()).filter(|&i| self.classes[i] == class).collect()
    }

    /// JSON with the apex, and per edge its endpoints, class and twin label.
    pub fn sidecar_json(&self) -> String {
        let doc = Sidecar {
            vertex_count: self.graph.vertex_count(),
            apex: self.apex,
            edges: self
                .graph
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| SidecarEdge {
                    label: e.label.clone(),
                    u: e.u,
                    v: e.v,
                    class: self.classes[i],
                    twin: self.graph.edge(self.twin[i]).label.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data")
    }

    /// Rebuilds an apex graph from [`ApexGraph::sidecar_json`] output and
    /// checks its invariants.
    pub fn from_sidecar(text: &str) -> Result<ApexGraph, ReductionError> {
        let doc: Sidecar =
            serde_json::from_str(text).map_err(|e| ReductionError::BadSidecar(e.to_string()))?;
        let mut graph = MultiGraph::new(doc.vertex_count);
        let mut classes = Vec::new();
        for e in &doc.edges {
            graph.add_labelled_edge(e.u, e.v, e.label.clone())?;
            classes.push(e.class);
        }
        let twin = doc
            .edges
            .iter()
            .map(|e| {
                graph
                    .edge_position(&e.twin)
                    .ok_or_else(|| ReductionError::BadSidecar(format!("unknown twin `{}`", e.twin)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let a = ApexGraph {
            graph,
            apex: doc.apex,
            classes,
            twin,
        };
        a.check().map_err(ReductionError::BadSidecar)?;
        Ok(a)
    }

    /// Checks the pairing, class and apex invariants.
    pub fn check(&self) -> Result<(), String> {
        let g = &self.graph;
        if self.apex >= g.vertex_count() || self.classes.len() != g.edge_count() || self.twin.len() != g.edge_count() {
            return Err("sizes disagree".into());
        }
        for (i, e) in g.edges().iter().enumerate() {
            let t = self.twin[i];
            let (c, tc) = (self.classes[i], self.classes[t]);
            let te = g.edge(t);
            let same_ends = (e.u.min(e.v), e.u.max(e.v)) == (te.u.min(te.v), te.u.max(te.v));
            if e.is_loop() || t == i || self.twin[t] != i || !same_ends {
                return Err(format!("edge `{}` is not paired with a parallel twin", e.label));
            }
            let touches_apex = e.u == self.apex || e.v == self.apex;
            if c.is_apex() != touches_apex || c.is_left() == tc.is_left() || c.is_apex() != tc.is_apex() {
                return Err(format!("edge `{}` has an inconsistent class", e.label));
            }
        }
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for e in g.edges() {
            *count.entry((e.u.min(e.v), e.u.max(e.v))).or_default() += 1;
        }
        if let Some(((u, v), c)) = count.iter().find(|(_, &c)| c != 2) {
            return Err(format!("{c} edges between {u} and {v}"));
        }
        if let Some(v) = (0..g.vertex_count()).find(|&v| v != self.apex && !count.contains_key(&(v.min(self.apex), v.max(self.apex)))) {
            return Err(format!("vertex {v} is not joined to the apex"));
        }
        Ok(())
    }
}

/// `G'`: loops dropped and every adjacent pair joined by exactly two edges,
/// labelled `l{u}-{v}` and `r{u}-{v}` with `u < v`.
pub fn simplify_double(g: &MultiGraph) -> MultiGraph {
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .map(|e| (e.u.min(e.v), e.u.max(e.v)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut out = MultiGraph::new(g.vertex_count());
    for (u, v) in pairs {
        out.add_labelled_edge(u, v, format!("l{u}-{v}")).expect("fresh label");
        out.add_labelled_edge(u, v, format!("r{u}-{v}")).expect("fresh label");
    }
    out
}

/// `Ḡ`: a new vertex `x` joined to every vertex by edges `lx{v}` and
/// `rx{v}`. Of each parallel pair of `gp`, the earlier edge is the left one.
pub fn add_apex(gp: &MultiGraph) -> Result<ApexGraph, ReductionError> {
    let n = gp.vertex_count();
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, e) in gp.edges().iter().enumerate() {
        if e.is_loop() {
            return Err(ReductionError::NotDoubledForm(format!("loop `{}`", e.label)));
        }
        by_pair.entry((e.u.min(e.v), e.u.max(e.v))).or_default().push(i);
    }
    let mut classes = vec![EdgeClass::BaseLeft; gp.edge_count()];
    let mut twin = vec![0; gp.edge_count()];
    for ((u, v), edges) in &by_pair {
        if edges.len() != 2 {
            return Err(ReductionError::NotDoubledForm(format!(
                "{} edges between {u} and {v}",
                edges.len()
            )));
        }
        classes[edges[1]] = EdgeClass::BaseRight;
        twin[edges[0]] = edges[1];
        twin[edges[1]] = edges[0];
    }
    let mut graph = gp.clone();
    let x = graph.add_vertex();
    for v in 0..n {
        let l = graph.add_labelled_edge(x, v, format!("lx{v}"))?;
        let r = graph.add_labelled_edge(x, v, format!("rx{v}"))?;
        classes.extend([EdgeClass::ApexLeft, EdgeClass::ApexRight]);
        twin.extend([r, l]);
    }
    Ok(ApexGraph {
        graph,
        apex: x,
        classes,
        twin,
    })
}

/// The cycle matroid of `Ḡ` over `field`, labelled by the edges of `Ḡ`.
pub fn reduce_instance(g: &MultiGraph, field: &Field) -> Result<(VectorMatroid, ApexGraph), ReductionError> {
    let apex = add_apex(&simplify_double(g))?;
    let m = cycle_matroid(&apex.graph, field)?;
    Ok((m, apex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::is_uniform;
    use crate::graph::{complete_graph, graph_pathwidth, path_graph};
    use crate::pathwidth::pathwidth_exact;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn doubling() {
        let t = simplify_double(&complete_graph(3));
        assert_eq!(t.edge_count(), 6);
        let mut g = MultiGraph::from_edges(3, &[(0, 0), (1, 2), (2, 1), (1, 2), (1, 2), (2, 1)]).unwrap();
        g.add_edge(0, 0).unwrap();
        let d = simplify_double(&g);
        assert_eq!(d.edge_count(), 2);
        assert_eq!(d.edge_labels(), vec!["l1-2", "r1-2"]);
        assert_eq!(simplify_double(&MultiGraph::new(4)).edge_count(), 0);
    }

    #[test]
    fn apex_sizes() {
        let a = add_apex(&simplify_double(&path_graph(2))).unwrap();
        assert_eq!((a.graph.vertex_count(), a.edge_count()), (3, 6));
        let a = add_apex(&simplify_double(&complete_graph(3))).unwrap();
        assert_eq!((a.graph.vertex_count(), a.edge_count()), (4, 12));
        assert_eq!(a.apex, 3);
        assert_eq!(a.check(), Ok(()));
        assert_eq!(a.class_members(EdgeClass::ApexLeft).len(), 3);
        assert_eq!(a.class_members(EdgeClass::BaseRight).len(), 3);
    }

    #[test]
    fn single_vertex_gives_u12() {
        let (m, a) = reduce_instance(&MultiGraph::new(1), &gf(3)).unwrap();
        assert_eq!(a.edge_count(), 2);
        assert!(is_uniform(&m, 1));
        assert_eq!(pathwidth_exact(&m).unwrap().width, 1);
    }

    #[test]
    fn undoubled_input_is_rejected() {
        assert!(matches!(add_apex(&path_graph(3)), Err(ReductionError::NotDoubledForm(_))));
        let looped = MultiGraph::from_edges(1, &[(0, 0)]).unwrap();
        assert!(add_apex(&looped).is_err());
    }

    #[test]
    fn apex_edges_span_everything() {
        let (m, a) = reduce_instance(&complete_graph(3), &gf(2)).unwrap();
        for class in [EdgeClass::ApexLeft, EdgeClass::ApexRight] {
            let set = a.class_members(class).into_iter().collect();
            assert_eq!(m.closure(set), m.ground());
        }
    }

    #[test]
    fn small_reductions() {
        for (g, pw) in [(path_graph(2), 1), (complete_graph(3), 2)] {
            let (m, _) = reduce_instance(&g, &gf(2)).unwrap();
            assert_eq!(graph_pathwidth(&g).unwrap().0, pw);
            assert_eq!(pathwidth_exact(&m).unwrap().width as i64, pw + 1);
        }
    }

    #[test]
    fn sidecar_round_trip() {
        let (_, a) = reduce_instance(&complete_graph(3), &gf(2)).unwrap();
        let json = a.sidecar_json();
        assert!(json.contains("\"L_x\"") && json.contains("\"R_G\""));
        assert_eq!(ApexGraph::from_sidecar(&json).unwrap(), a);
        let broken = json.replacen("\"R_G\"", "\"L_G\"", 1);
        assert!(ApexGraph::from_sidecar(&broken).is_err());
        assert!(ApexGraph::from_sidecar("[]").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn doubled_form_properties(g in arb_graph(6, 10)) {
            let d = simplify_double(&g);
            prop_assert!(d.edges().iter().all(|e| !e.is_loop()));
            for u in 0..g.vertex_count() {
                for v in 0..g.vertex_count() {
                    prop_assert_eq!(d.adjacent(u, v), g.adjacent(u, v));
                }
            }
            let a = add_apex(&d).unwrap();
            prop_assert_eq!(a.check(), Ok(()));
            prop_assert_eq!(a.edge_count(), d.edge_count() + 2 * g.vertex_count());
            prop_assert_eq!(a.graph.component_count(), 1);
        }

        #[test]
        fn apex_graph_has_one_more_pathwidth(g in arb_graph(5, 7)) {
            let a = add_apex(&simplify_double(&g)).unwrap();
            prop_assert_eq!(graph_pathwidth(&a.graph).unwrap().0, graph_pathwidth(&g).unwrap().0 + 1);
        }
    }
}
