use super::{GraphError, MultiGraph};

/// Default vertex limit for [`graph_pathwidth`].
pub const GRAPH_VERTEX_CAP: usize = 16;

/// Hard limit on the vertex-subset table, whatever the configured cap.
const TABLE_LIMIT: usize = 26;

/// An ordered sequence of vertex bags.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        PathDecomposition { bags }
    }

    /// `max |V_i| - 1`, or `-1` with no bags.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64 - 1).max().unwrap_or(-1)
    }
}

/// Checks the three decomposition conditions and returns the width.
pub fn validate_path_decomposition(g: &MultiGraph, d: &PathDecomposition) -> Result<i64, GraphError> {
    let n = g.vertex_count();
    let fail = |msg: String| Err(GraphError::NotADecomposition(msg));
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in d.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return fail(format!("bag {i} holds vertex {v}, graph has {n}"));
            }
            if occurs[v].last() != Some(&i) {
                occurs[v].push(i);
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| occurs[v].is_empty()) {
        return fail(format!("condition (i): vertex {v} is in no bag"));
    }
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        let together = occurs[e.u].iter().any(|i| occurs[e.v].contains(i));
        if !together {
            return fail(format!(
                "condition (ii): adjacent vertices {} and {} share no bag",
                e.u, e.v
            ));
        }
    }
    for (v, idx) in occurs.iter().enumerate() {
        if let Some(w) = idx.windows(2).find(|w| w[1] != w[0] + 1) {
            return fail(format!(
                "condition (iii): vertex {v} is in bags {} and {} but not {}",
                w[0],
                w[1],
                w[0] + 1
            ));
        }
    }
    Ok(d.width())
}

fn neighbour_masks(g: &MultiGraph) -> Vec<u32> {
    g.neighbours()
        .iter()
        .map(|ns| ns.iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect()
}

fn boundary(nbr: &[u32], set: u32) -> u32 {
    let mut out = 0;
    let mut bits = set;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if nbr[v] & !set != 0 {
            out |= 1 << v;
        }
    }
    out
}

/// Vertex separation number with an optimal layout.
///
/// `f(S) = max(|∂S|, min_v f(S - v))`, where `∂S` is the set of vertices of
/// `S` with a neighbour outside `S`. Ties in the layout go to the smaller
/// vertex.
pub fn vertex_separation(g: &MultiGraph, cap: usize) -> Result<(usize, Vec<usize>), GraphError> {
    let n = g.vertex_count();
    let cap = cap.min(TABLE_LIMIT);
    if n > cap {
        return Err(GraphError::TooManyVertices { count: n, cap });
    }
    let nbr = neighbour_masks(g);
    let full = ((1u64 << n) - 1) as u32;
    let mut f = vec![0u8; 1 << n];
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            best = best.min(f[(s & !(1 << v)) as usize]);
        }
        f[s as usize] = best.max(boundary(&nbr, s).count_ones() as u8);
    }
    let mut layout = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let mut pick = None;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let val = f[(s & !(1 << v)) as usize];
            if pick.is_none_or(|(_, b)| val < b) {
                pick = Some((v, val));
            }
        }
        let (v, _) = pick.expect("nonempty");
        layout.push(v as usize);
        s &= !(1 << v);
    }
    layout.reverse();
    Ok((f[full as usize] as usize, layout))
}

/// Bags `{v_i} ∪ ∂(v_1..v_{i-1})` of a vertex layout.
fn layout_bags(g: &MultiGraph, layout: &[usize]) -> PathDecomposition {
    let nbr = neighbour_masks(g);
    let mut prefix = 0u32;
    let mut bags = Vec::with_capacity(layout.len());
    for &v in layout {
        let b = boundary(&nbr, prefix) | 1 << v;
        bags.push((0..layout.len()).filter(|&w| b >> w & 1 == 1).collect());
        prefix |= 1 << v;
    }
    PathDecomposition { bags }
}

/// Exact pathwidth with a witnessing decomposition, for at most
/// [`GRAPH_VERTEX_CAP`] vertices. The graph with no vertices has width `-1`.
pub fn graph_pathwidth(g: &MultiGraph) -> Result<(i64, PathDecomposition), GraphError> {
    graph_pathwidth_with_cap(g, GRAPH_VERTEX_CAP)
}

pub fn graph_pathwidth_with_cap(
    g: &MultiGraph,
    cap: usize,
) -> Result<(i64, PathDecomposition), GraphError> {
    let (vs, layout) = vertex_separation(g, cap)?;
    let d = layout_bags(g, &layout);
    let width = d.width();
    debug_assert_eq!(width, if layout.is_empty() { -1 } else { vs as i64 });
    Ok((width, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph};
    use crate::testutil::arb_graph;
    use proptest::prelude::*;
    use std::collections::HashSet;

    /// Smallest `w` admitting a decomposition with bags of size `<= w + 1`,
    /// found by searching bag sequences directly. A bag that introduces no
    /// new vertex is contained in its predecessor and can be dropped, so
    /// every bag is taken to introduce one.
    fn brute_pathwidth(g: &MultiGraph) -> i64 {
        let n = g.vertex_count();
        if n == 0 {
            return -1;
        }
        let pairs: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect();
        let covered_by = |bag: u32| -> u64 {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| bag >> a & 1 == 1 && bag >> b & 1 == 1)
                .fold(0, |acc, (i, _)| acc | 1 << i)
        };
        let all_pairs = if pairs.is_empty() { 0 } else { (1u64 << pairs.len()) - 1 };
        let full = (1u32 << n) - 1;
        for w in 0..n as i64 {
            let mut seen_states = HashSet::new();
            let mut stack = vec![(0u32, 0u32, 0u64)];
            let mut found = false;
            while let Some((seen, bag, covered)) = stack.pop() {
                if seen == full && covered == all_pairs {
                    found = true;
                    break;
                }
                if !seen_states.insert((seen, bag, covered)) {
                    continue;
                }
                let closed = seen & !bag;
                for next in 1..=full {
                    if next.count_ones() as i64 > w + 1 || next & closed != 0 || next & !seen == 0 {
                        continue;
                    }
                    stack.push((seen | next, next, covered | covered_by(next)));
                }
            }
            if found {
                return w;
            }
        }
        unreachable!("a single bag always works")
    }

    fn graph(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
        MultiGraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn validation_examples() {
        let e = graph(2, &[(0, 1)]);
        assert_eq!(validate_path_decomposition(&e, &PathDecomposition::new(vec![vec![0, 1]])), Ok(1));
        let k3 = complete_graph(3);
        assert_eq!(
            validate_path_decomposition(&k3, &PathDecomposition::new(vec![vec![0, 1, 2]])),
            Ok(2)
        );
        let p = path_graph(3);
        let good = PathDecomposition::new(vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(validate_path_decomposition(&p, &good), Ok(1));
        let bad = PathDecomposition::new(vec![vec![0, 1], vec![2]]);
        match validate_path_decomposition(&p, &bad) {
            Err(GraphError::NotADecomposition(msg)) => {
                assert!(msg.contains("(ii)") && msg.contains('1') && msg.contains('2'), "{msg}")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn validation_catches_each_condition() {
        let p = path_graph(3);
        let missing = PathDecomposition::new(vec![vec![0, 1]]);
        assert!(matches!(
            validate_path_decomposition(&p, &missing),
            Err(GraphError::NotADecomposition(m)) if m.contains("(i)")
        ));
        let gap = PathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![0]]);
        assert!(matches!(
            validate_path_decomposition(&p, &gap),
            Err(GraphError::NotADecomposition(m)) if m.contains("(iii)")
        ));
        let range = PathDecomposition::new(vec![vec![0, 1, 2, 3]]);
        assert!(validate_path_decomposition(&p, &range).is_err());
        let looped = graph(1, &[(0, 0)]);
        assert_eq!(validate_path_decomposition(&looped, &PathDecomposition::new(vec![vec![0]])), Ok(0));
    }

    #[test]
    fn small_pathwidths() {
        assert_eq!(graph_pathwidth(&MultiGraph::new(4)).unwrap().0, 0);
        assert_eq!(graph_pathwidth(&complete_graph(3)).unwrap().0, 2);
        assert_eq!(graph_pathwidth(&path_graph(4)).unwrap().0, 1);
        assert_eq!(graph_pathwidth(&cycle_graph(6)).unwrap().0, 2);
        assert_eq!(graph_pathwidth(&complete_graph(6)).unwrap().0, 5);
        let (w, d) = graph_pathwidth(&MultiGraph::new(0)).unwrap();
        assert_eq!((w, d.bags.len()), (-1, 0));
        assert_eq!(brute_pathwidth(&complete_graph(3)), 2);
        assert_eq!(brute_pathwidth(&path_graph(4)), 1);
    }

    #[test]
    fn vertex_cap_is_enforced() {
        assert!(matches!(
            graph_pathwidth(&MultiGraph::new(17)),
            Err(GraphError::TooManyVertices { count: 17, cap: 16 })
        ));
        assert_eq!(graph_pathwidth_with_cap(&path_graph(18), 20).unwrap().0, 1);
    }

    #[test]
    fn sixteen_vertex_grid() {
        let mut g = MultiGraph::new(16);
        for r in 0..4 {
            for c in 0..4 {
                if c < 3 {
                    g.add_edge(4 * r + c, 4 * r + c + 1).unwrap();
                }
                if r < 3 {
                    g.add_edge(4 * r + c, 4 * r + c + 4).unwrap();
                }
            }
        }
        let (w, d) = graph_pathwidth(&g).unwrap();
        assert_eq!(w, 4);
        assert_eq!(validate_path_decomposition(&g, &d), Ok(4));
    }

    proptest! {
        #[test]
        fn decomposition_validates_at_returned_width(g in arb_graph(9, 16)) {
            let (w, d) = graph_pathwidth(&g).unwrap();
            prop_assert_eq!(validate_path_decomposition(&g, &d), Ok(w));
        }

        #[test]
        fn agrees_with_bag_search(g in arb_graph(5, 8)) {
            prop_assert_eq!(graph_pathwidth(&g).unwrap().0, brute_pathwidth(&g));
        }

        #[test]
        fn parallel_edges_do_not_matter(g in arb_graph(8, 12), pick in any::<prop::sample::Index>()) {
            prop_assume!(g.edge_count() > 0);
            let e = g.edge(pick.index(g.edge_count())).clone();
            let mut h = g.clone();
            h.add_edge(e.u, e.v).unwrap();
            prop_assert_eq!(graph_pathwidth(&g).unwrap().0, graph_pathwidth(&h).unwrap().0);
        }
    }
}
