use itertools::Itertools;
use rand::Rng;

use crate::graph::MultiGraph;
use crate::random::TestRng;

/// One simple graph per isomorphism class of connected simple graphs on
/// `0..=max_vertices` vertices; the empty graph counts as connected.
pub fn connected_simple_graphs(max_vertices: usize) -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let mut seen = std::collections::HashSet::new();
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let g = MultiGraph::from_edges(n, &edges).expect("in range");
            if n > 0 && g.component_count() != 1 {
                continue;
            }
            let canonical = perms
                .iter()
                .map(|p| {
                    let mut relabelled: Vec<(usize, usize)> = edges
                        .iter()
                        .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                        .collect();
                    relabelled.sort_unstable();
                    relabelled
                })
                .min()
                .unwrap_or_default();
            if seen.insert(canonical) {
                out.push(g);
            }
        }
    }
    out
}

/// A simple graph on `vertices` vertices with a uniformly random number of
/// edges in `0..=max_edges`, chosen without repetition.
pub fn random_simple_graph_with_edges(rng: &mut TestRng, vertices: usize, max_edges: usize) -> MultiGraph {
    let mut pairs: Vec<(usize, usize)> = (0..vertices).tuple_combinations().collect();
    let m = rng.gen_range(0..=max_edges.min(pairs.len()));
    let mut chosen = Vec::with_capacity(m);
    for _ in 0..m {
        chosen.push(pairs.swap_remove(rng.gen_range(0..pairs.len())));
    }
    chosen.sort_unstable();
    MultiGraph::from_edges(vertices, &chosen).expect("in range")
}

/// Graphs accepted by name: `k<n>` complete, `p<n>` path, `c<n>` cycle.
pub fn named_graph(name: &str) -> Option<MultiGraph> {
    let lower = name.to_ascii_lowercase();
    let (kind, n) = lower.split_at(1);
    let n: usize = n.parse().ok()?;
    match kind {
        "k" => Some(crate::graph::complete_graph(n)),
        "p" => Some(crate::graph::path_graph(n)),
        "c" if n >= 3 => Some(crate::graph::cycle_graph(n)),
        _ => None,
    }
}
