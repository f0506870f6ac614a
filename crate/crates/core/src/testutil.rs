use proptest::prelude::*;
use rand::Rng;

use crate::algebra::Field;
use crate::graph::MultiGraph;
use crate::matroid::VectorMatroid;
use crate::random::{random_multigraph, random_vector_matroid, seeded, TestRng};

pub fn rng(seed: u64) -> TestRng {
    seeded(seed)
}

pub const SMALL_ORDERS: [u32; 5] = [2, 3, 4, 5, 7];

/// A random matroid on at most `max_n` elements over a random small field.
pub fn random_matroid(rng: &mut TestRng, max_n: usize) -> VectorMatroid {
    let q = SMALL_ORDERS[rng.gen_range(0..SMALL_ORDERS.len())];
    let field = Field::with_order(q).unwrap();
    let n = rng.gen_range(0..=max_n);
    let rows = rng.gen_range(0..=n.min(5));
    random_vector_matroid(rng, &field, rows, n)
}

pub fn random_graph(rng: &mut TestRng, max_vertices: usize, max_edges: usize) -> MultiGraph {
    let n = rng.gen_range(0..=max_vertices);
    let m = if n == 0 { 0 } else { rng.gen_range(0..=max_edges) };
    random_multigraph(rng, n, m)
}

pub fn arb_graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = MultiGraph> {
    (0..=max_vertices).prop_flat_map(move |n| {
        let pairs = if n == 0 {
            Just(Vec::new()).boxed()
        } else {
            prop::collection::vec((0..n, 0..n), 0..=max_edges).boxed()
        };
        pairs.prop_map(move |es| MultiGraph::from_edges(n, &es).unwrap())
    })
}

pub fn arb_matroid(max_n: usize) -> impl Strategy<Value = VectorMatroid> {
    any::<u64>().prop_map(move |seed| random_matroid(&mut rng(seed), max_n))
}
