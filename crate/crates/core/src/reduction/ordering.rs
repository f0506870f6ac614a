use super::{ApexGraph, EdgeClass, ReductionError};
use crate::graph::{validate_path_decomposition, MultiGraph, PathDecomposition};
use crate::matroid::{GroundSubset, VectorMatroid};

/// One block `(L, A, B, R)` of a re-ordered sequence, as edge positions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Block {
    pub l: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub r: Vec<usize>,
}

impl Block {
    fn part(&mut self, class: EdgeClass) -> &mut Vec<usize> {
        match class {
            EdgeClass::ApexLeft => &mut self.l,
            EdgeClass::BaseLeft => &mut self.a,
            EdgeClass::BaseRight => &mut self.b,
            EdgeClass::ApexRight => &mut self.r,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.l.iter().chain(&self.a).chain(&self.b).chain(&self.r).copied()
    }
}

fn check_permutation(a: &ApexGraph, order: &[usize]) -> Result<(), ReductionError> {
    let n = a.edge_count();
    let mut seen = vec![false; n];
    for &e in order {
        if e >= n || std::mem::replace(&mut seen[e], true) {
            return Err(ReductionError::NotAPermutation(format!("entry {e} is out of range or repeated")));
        }
    }
    if order.len() != n {
        return Err(ReductionError::NotAPermutation(format!("{} entries for {n} edges", order.len())));
    }
    Ok(())
}

/// `G'` recovered from the apex graph: everything but the apex.
fn base_graph(a: &ApexGraph) -> MultiGraph {
    let mut g = MultiGraph::new(a.base_vertex_count());
    for (i, e) in a.graph.edges().iter().enumerate() {
        if !a.classes[i].is_apex() {
            g.add_labelled_edge(e.u, e.v, e.label.clone()).expect("copied from a valid graph");
        }
    }
    g
}

/// Every left edge comes before its right twin.
pub fn is_normal(a: &ApexGraph, order: &[usize]) -> bool {
    if check_permutation(a, order).is_err() {
        return false;
    }
    let pos = positions(a.edge_count(), order);
    (0..a.edge_count()).all(|e| !a.classes[e].is_left() || pos[e] < pos[a.twin[e]])
}

/// Swaps every twin pair that appears right-before-left.
pub fn normalize(a: &ApexGraph, order: &[usize]) -> Result<Vec<usize>, ReductionError> {
    check_permutation(a, order)?;
    let mut out = order.to_vec();
    let pos = positions(a.edge_count(), order);
    for e in 0..a.edge_count() {
        let t = a.twin[e];
        if a.classes[e].is_left() && pos[e] > pos[t] {
            out.swap(pos[e], pos[t]);
        }
    }
    Ok(out)
}

fn positions(n: usize, order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; n];
    for (i, &e) in order.iter().enumerate() {
        pos[e] = i;
    }
    pos
}

/// Orders the edges of `Ḡ` bag by bag from a path decomposition of the base
/// graph. Within one bag's new edges the order is `L_x`, `L_G`, `R_G`, `R_x`,
/// then edge position.
pub fn decomp_to_ordering(a: &ApexGraph, d: &PathDecomposition) -> Result<Vec<usize>, ReductionError> {
    validate_path_decomposition(&base_graph(a), d).map_err(ReductionError::InvalidDecomposition)?;
    let g = &a.graph;
    let mut placed = vec![false; a.edge_count()];
    let mut order = Vec::with_capacity(a.edge_count());
    for bag in &d.bags {
        let mut inside = vec![false; g.vertex_count()];
        for &v in bag {
            inside[v] = true;
        }
        inside[a.apex] = true;
        let mut fresh: Vec<usize> = (0..a.edge_count())
            .filter(|&i| !placed[i] && inside[g.edge(i).u] && inside[g.edge(i).v])
            .collect();
        fresh.sort_by_key(|&i| (a.classes[i], i));
        for &i in &fresh {
            placed[i] = true;
        }
        order.extend(fresh);
    }
    debug_assert_eq!(order.len(), a.edge_count());
    Ok(order)
}

/// Rearranges a normal ordering so that it splits into blocks
/// `(L_j, A_j, B_j, R_j)` without raising the width. Ties go to the earliest
/// position in the current sequence.
pub fn reorder(a: &ApexGraph, m: &VectorMatroid, order: &[usize]) -> Result<Vec<usize>, ReductionError> {
    if !is_normal(a, order) {
        check_permutation(a, order)?;
        return Err(ReductionError::NotNormal("a right edge precedes its twin".into()));
    }
    let n = order.len();
    let mut seq = order.to_vec();
    let mut prefix = GroundSubset::EMPTY;
    for j in 0..n {
        let pending = m.closure(prefix).difference(prefix);
        let pick = if pending.is_empty() {
            let mut found = None;
            let mut grown = prefix;
            for k in j..n {
                grown = grown.with(seq[k]);
                let span = m.closure(grown);
                found = (j..n).find(|&i| a.classes[seq[i]] == EdgeClass::ApexLeft && span.contains(seq[i]));
                if found.is_some() {
                    break;
                }
            }
            found.ok_or(ReductionError::NoApexCandidate { step: j })?
        } else {
            let best = pending.iter().map(|e| a.classes[e]).min().expect("non-empty");
            (j..n)
                .find(|&i| a.classes[seq[i]] == best && pending.contains(seq[i]))
                .expect("pending elements lie after the prefix")
        };
        let e = seq.remove(pick);
        seq.insert(j, e);
        prefix = prefix.with(e);
    }
    Ok(seq)
}

/// Splits an ordering into maximal runs of non-decreasing class and checks
/// that every twin pair falls in one block.
pub fn block_partition(a: &ApexGraph, order: &[usize]) -> Result<Vec<Block>, ReductionError> {
    check_permutation(a, order)?;
    let mut blocks: Vec<Block> = Vec::new();
    let mut block_of = vec![0; a.edge_count()];
    let mut last: Option<EdgeClass> = None;
    for &e in order {
        let c = a.classes[e];
        if last.is_none_or(|p| c < p) {
            blocks.push(Block::default());
        }
        last = Some(c);
        blocks.last_mut().expect("pushed").part(c).push(e);
        block_of[e] = blocks.len() - 1;
    }
    for e in 0..a.edge_count() {
        if block_of[e] != block_of[a.twin[e]] {
            return Err(ReductionError::WrongShape(format!(
                "`{}` and its twin lie in blocks {} and {}",
                a.graph.edge(e).label,
                block_of[e] + 1,
                block_of[a.twin[e]] + 1
            )));
        }
    }
    Ok(blocks)
}

/// Checks `A_j ∪ B_j ⊆ cl(L_1 ∪ ... ∪ L_j) − cl(L_1 ∪ ... ∪ L_{j-1})`.
pub fn check_block_closure(m: &VectorMatroid, blocks: &[Block]) -> Result<(), ReductionError> {
    let mut before = GroundSubset::EMPTY;
    for (j, block) in blocks.iter().enumerate() {
        let old = m.closure(before);
        before = before.union(GroundSubset::from_positions(block.l.iter().copied()));
        let new = m.closure(before);
        if let Some(e) = block.a.iter().chain(&block.b).find(|&&e| !new.contains(e) || old.contains(e)) {
            return Err(ReductionError::WrongShape(format!(
                "element {} of block {} is not newly spanned by its apex edges",
                m.label(*e),
                j + 1
            )));
        }
    }
    Ok(())
}

/// A path decomposition of `Ḡ` from a block-shaped ordering: bag `j` holds
/// the vertices touched both by `Y_j` (earlier blocks plus `L_j ∪ A_j`) and by
/// its complement.
pub fn ordering_to_decomp(a: &ApexGraph, order: &[usize]) -> Result<PathDecomposition, ReductionError> {
    let blocks = block_partition(a, order)?;
    let g = &a.graph;
    let mut in_y = vec![false; a.edge_count()];
    let mut bags = Vec::with_capacity(blocks.len());
    for block in &blocks {
        for &e in block.l.iter().chain(&block.a) {
            in_y[e] = true;
        }
        let mut y_side = vec![false; g.vertex_count()];
        let mut rest_side = vec![false; g.vertex_count()];
        for (i, e) in g.edges().iter().enumerate() {
            let side = if in_y[i] { &mut y_side } else { &mut rest_side };
            side[e.u] = true;
            side[e.v] = true;
        }
        bags.push((0..g.vertex_count()).filter(|&v| y_side[v] && rest_side[v]).collect());
        for &e in block.b.iter().chain(&block.r) {
            in_y[e] = true;
        }
    }
    if bags.is_empty() {
        bags.push(vec![a.apex]);
    }
    let d = PathDecomposition::new(bags);
    validate_path_decomposition(g, &d).map_err(|e| ReductionError::WrongShape(e.to_string()))?;
    Ok(d)
}

/// Keeps the bags from the first to the last one holding the apex and
/// removes the apex from them.
pub fn strip_apex(a: &ApexGraph, d: &PathDecomposition) -> PathDecomposition {
    let holds = |b: &Vec<usize>| b.contains(&a.apex);
    let (Some(first), Some(last)) = (d.bags.iter().position(holds), d.bags.iter().rposition(holds)) else {
        return PathDecomposition::default();
    };
    PathDecomposition::new(
        d.bags[first..=last]
            .iter()
            .map(|b| b.iter().copied().filter(|&v| v != a.apex).collect())
            .collect(),
    )
}
