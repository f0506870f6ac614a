use super::{GraphError, MultiGraph};

/// The umbrella on `u_0..u_m` (vertex `i` is `u_i`): the circuit
/// `u_0 u_1 ... u_m u_0`, then `parallel_counts[i - 1]` extra edges
/// `u_0 u_i` for each `i` in `1..=m`.
pub fn make_umbrella(parallel_counts: &[usize]) -> Result<MultiGraph, GraphError> {
    let m = parallel_counts.len();
    if m < 2 {
        return Err(GraphError::CircuitTooSmall(m));
    }
    let mut g = MultiGraph::new(m + 1);
    for i in 0..m {
        g.add_edge(i, i + 1)?;
    }
    g.add_edge(m, 0)?;
    for (i, &c) in parallel_counts.iter().enumerate() {
        for _ in 0..c {
            g.add_edge(0, i + 1)?;
        }
    }
    Ok(g)
}

/// Edge positions in the order `E_1, e_1, E_2, e_2, ..., e_{m-1}, E_m`, where
/// `E_i` holds every edge `u_0 u_i` and `e_j` is the edge `u_j u_{j+1}`.
pub fn umbrella_ordering(h: &MultiGraph) -> Result<Vec<usize>, GraphError> {
    let bad = |msg: String| Err(GraphError::NotAnUmbrella(msg));
    let n = h.vertex_count();
    if n < 3 {
        return bad(format!("{n} vertices"));
    }
    let m = n - 1;
    let mut spokes: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
    let mut rim: Vec<Option<usize>> = vec![None; m];
    for (i, e) in h.edges().iter().enumerate() {
        let (a, b) = (e.u.min(e.v), e.u.max(e.v));
        if a == 0 && b > 0 {
            spokes[b].push(i);
        } else if a > 0 && b == a + 1 {
            if rim[a].replace(i).is_some() {
                return bad(format!("path edge {a}-{b} is repeated"));
            }
        } else {
            return bad(format!("edge `{}` joins {} and {}", e.label, e.u, e.v));
        }
    }
    if let Some(j) = (1..m).find(|&j| rim[j].is_none()) {
        return bad(format!("path edge {}-{} is missing", j, j + 1));
    }
    for i in [1, m] {
        if spokes[i].is_empty() {
            return bad(format!("circuit edge 0-{i} is missing"));
        }
    }
    let mut order = Vec::with_capacity(h.edge_count());
    for i in 1..=m {
        order.extend(&spokes[i]);
        if i < m {
            order.push(rim[i].expect("checked"));
        }
    }
    Ok(order)
}
