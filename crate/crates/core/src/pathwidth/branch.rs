use std::collections::{HashMap, HashSet};

use super::PathwidthError;
use crate::matroid::{GroundSubset, VectorMatroid};

/// A tree whose nodes all have degree 1 or 3, with a label on every leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicTree {
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
    /// `(leaf node, element label)`.
    pub leaf_labels: Vec<(usize, String)>,
}

impl CubicTree {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Internal nodes in order along the spine, for a caterpillar.
    pub fn internal_nodes(&self) -> Vec<usize> {
        let adj = self.adjacency();
        (0..self.node_count).filter(|&v| adj[v].len() == 3).collect()
    }
}

/// The caterpillar on `labels`: a path of `n - 2` internal nodes with the
/// first two leaves on the first spine node, the last two on the last, and
/// one leaf on each spine node between.
pub fn caterpillar<S: AsRef<str>>(labels: &[S]) -> Result<CubicTree, PathwidthError> {
    let n = labels.len();
    if n < 2 {
        return Err(PathwidthError::TooFewElements(n));
    }
    let leaf_labels: Vec<(usize, String)> =
        labels.iter().enumerate().map(|(i, l)| (i, l.as_ref().to_string())).collect();
    if n == 2 {
        return Ok(CubicTree {
            node_count: 2,
            edges: vec![(0, 1)],
            leaf_labels,
        });
    }
    // leaves are nodes 0..n, spine nodes n..2n-2
    let spine = |i: usize| n + i;
    let mut edges = Vec::with_capacity(2 * n - 3);
    for i in 1..n - 2 {
        edges.push((spine(i - 1), spine(i)));
    }
    for leaf in 0..n {
        let s = leaf.saturating_sub(1).min(n - 3);
        edges.push((leaf, spine(s)));
    }
    Ok(CubicTree {
        node_count: 2 * n - 2,
        edges,
        leaf_labels,
    })
}

/// The largest `λ` of a set displayed by a tree edge.
pub fn branch_width_of_tree(m: &VectorMatroid, t: &CubicTree) -> Result<usize, PathwidthError> {
    let adj = t.adjacency();
    if t.edges.len() + 1 != t.node_count {
        return Err(PathwidthError::NotCubic(format!(
            "{} nodes and {} edges",
            t.node_count,
            t.edges.len()
        )));
    }
    if let Some(v) = (0..t.node_count).find(|&v| !matches!(adj[v].len(), 1 | 3) && t.node_count > 1) {
        return Err(PathwidthError::NotCubic(format!("node {v} has degree {}", adj[v].len())));
    }
    let mut element_at: HashMap<usize, usize> = HashMap::new();
    let mut seen = HashSet::new();
    for (node, label) in &t.leaf_labels {
        let e = m
            .position(label)
            .ok_or_else(|| PathwidthError::LeafLabelMismatch(format!("unknown label `{label}`")))?;
        if *node >= t.node_count || adj[*node].len() > 1 || !seen.insert(e) || element_at.insert(*node, e).is_some() {
            return Err(PathwidthError::LeafLabelMismatch(format!("bad leaf `{label}`")));
        }
    }
    let leaves = (0..t.node_count).filter(|&v| adj[v].len() <= 1).count();
    if seen.len() != m.size() || leaves != m.size() {
        return Err(PathwidthError::LeafLabelMismatch(format!(
            "{} labelled leaves for {} elements",
            seen.len(),
            m.size()
        )));
    }
    let mut width = 0;
    for &(a, b) in &t.edges {
        // elements on a's side once the edge is removed
        let mut side = GroundSubset::EMPTY;
        let mut stack = vec![(a, b)];
        while let Some((v, from)) = stack.pop() {
            if let Some(&e) = element_at.get(&v) {
                side = side.with(e);
            }
            stack.extend(adj[v].iter().filter(|&&w| w != from).map(|&w| (w, v)));
        }
        width = width.max(m.connectivity(side));
    }
    Ok(width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, GfMatrix};
    use crate::catalog::uniform;
    use crate::pathwidth::width_of_ordering;
    use crate::testutil::{random_matroid, rng};
    use rand::seq::SliceRandom;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn shapes() {
        let t = caterpillar(&labels(2)).unwrap();
        assert_eq!((t.node_count, t.edges.len()), (2, 1));
        let t = caterpillar(&labels(4)).unwrap();
        assert_eq!(t.internal_nodes().len(), 2);
        let t = caterpillar(&labels(6)).unwrap();
        assert_eq!(t.internal_nodes().len(), 4);
        assert_eq!(t.edges.len(), 9);
        assert!(matches!(caterpillar(&labels(1)), Err(PathwidthError::TooFewElements(1))));
    }

    #[test]
    fn leaves_sit_along_the_spine_in_order() {
        let t = caterpillar(&labels(6)).unwrap();
        let spine_of = |leaf: usize| t.edges.iter().find(|e| e.0 == leaf).unwrap().1;
        let spots: Vec<usize> = (0..6).map(spine_of).collect();
        assert_eq!(spots, vec![6, 6, 7, 8, 9, 9]);
    }

    #[test]
    fn free_matroid_and_u24() {
        let f = Field::with_order(3).unwrap();
        let free = VectorMatroid::new(GfMatrix::identity(&f, 5)).unwrap();
        assert_eq!(branch_width_of_tree(&free, &caterpillar(free.labels()).unwrap()), Ok(0));
        let u = uniform(2, 4, &f).unwrap();
        assert_eq!(branch_width_of_tree(&u, &caterpillar(u.labels()).unwrap()), Ok(2));
        // the other two 4-leaf cubic trees pair the leaves differently
        let other = caterpillar(&["1", "3", "2", "4"]).unwrap();
        assert_eq!(branch_width_of_tree(&u, &other), Ok(2));
    }

    #[test]
    fn mismatched_leaves_are_rejected() {
        let f = Field::with_order(2).unwrap();
        let m = VectorMatroid::new(GfMatrix::identity(&f, 3)).unwrap();
        let t = caterpillar(&["1", "2", "x"]).unwrap();
        assert!(matches!(branch_width_of_tree(&m, &t), Err(PathwidthError::LeafLabelMismatch(_))));
        let t = caterpillar(&["1", "2"]).unwrap();
        assert!(branch_width_of_tree(&m, &t).is_err());
        let mut bad = caterpillar(&["1", "2", "3"]).unwrap();
        bad.edges.pop();
        assert!(matches!(branch_width_of_tree(&m, &bad), Err(PathwidthError::NotCubic(_))));
    }

    #[test]
    fn caterpillar_width_equals_ordering_width() {
        let mut rng = rng(14);
        let mut checked = 0;
        while checked < 100 {
            let m = random_matroid(&mut rng, 9);
            if m.size() < 2 {
                continue;
            }
            let mut order: Vec<usize> = (0..m.size()).collect();
            order.shuffle(&mut rng);
            let cert = width_of_ordering(&m, &order).unwrap();
            let tree = caterpillar(&cert.labels).unwrap();
            assert_eq!(branch_width_of_tree(&m, &tree).unwrap(), cert.width);
            checked += 1;
        }
    }
}
