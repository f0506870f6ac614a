//! Seeded generators for matrices, matroids and graphs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Field, GfMatrix};
use crate::graph::MultiGraph;
use crate::matroid::VectorMatroid;

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: &Field, rows: usize, cols: usize) -> GfMatrix {
    let q = field.order();
    let data = (0..rows * cols).map(|_| rng.gen_range(0..q) as u8).collect();
    GfMatrix::new(field, rows, cols, data).expect("entries in range")
}

/// Each entry is zero with probability `1 - density`, otherwise a uniformly
/// random nonzero element.
pub fn random_sparse_matrix<R: Rng>(rng: &mut R, field: &Field, rows: usize, cols: usize, density: f64) -> GfMatrix {
    let q = field.order();
    let data = (0..rows * cols)
        .map(|_| if rng.gen_bool(density) { rng.gen_range(1..q) as u8 } else { 0 })
        .collect();
    GfMatrix::new(field, rows, cols, data).expect("entries in range")
}

/// A matroid on `n` elements with a random number of rows (at most `n`) and
/// a random density, so that small-width and degenerate cases turn up often.
pub fn random_mixed_matroid<R: Rng>(rng: &mut R, field: &Field, n: usize) -> VectorMatroid {
    let rows = rng.gen_range(0..=n.min(5));
    let density = [0.3, 0.5, 0.8][rng.gen_range(0..3)];
    VectorMatroid::new(random_sparse_matrix(rng, field, rows, n, density)).expect("ground set within cap")
}

/// Like [`random_vector_matroid`] but with distinct nonzero columns whenever
/// the field has room for `n` of them.
pub fn random_distinct_column_matroid<R: Rng>(rng: &mut R, field: &Field, rows: usize, n: usize) -> VectorMatroid {
    let q = field.order();
    let room = (0..rows).try_fold(1usize, |acc, _| acc.checked_mul(q)).map_or(usize::MAX, |v| v - 1);
    if room < n {
        return random_vector_matroid(rng, field, rows, n);
    }
    let mut cols: Vec<Vec<u8>> = Vec::with_capacity(n);
    while cols.len() < n {
        let c: Vec<u8> = (0..rows).map(|_| rng.gen_range(0..q) as u8).collect();
        if c.iter().any(|&x| x != 0) && !cols.contains(&c) {
            cols.push(c);
        }
    }
    let data = (0..rows).flat_map(|r| cols.iter().map(move |c| c[r])).collect();
    VectorMatroid::new(GfMatrix::new(field, rows, n, data).expect("entries in range")).expect("ground set within cap")
}

/// A vector matroid on `n` elements from a uniformly random `rows x n`
/// matrix.
pub fn random_vector_matroid<R: Rng>(
    rng: &mut R,
    field: &Field,
    rows: usize,
    n: usize,
) -> VectorMatroid {
    VectorMatroid::new(random_matrix(rng, field, rows, n)).expect("ground set within cap")
}

/// `m` edges with uniformly random endpoints; loops and parallels allowed.
pub fn random_multigraph<R: Rng>(rng: &mut R, vertices: usize, m: usize) -> MultiGraph {
    let mut g = MultiGraph::new(vertices);
    if vertices == 0 {
        return g;
    }
    for _ in 0..m {
        let (u, v) = (rng.gen_range(0..vertices), rng.gen_range(0..vertices));
        g.add_edge(u, v).expect("in range");
    }
    g
}

/// A simple graph with each pair present independently with probability `p`.
pub fn random_simple_graph<R: Rng>(rng: &mut R, vertices: usize, p: f64) -> MultiGraph {
    let mut g = MultiGraph::new(vertices);
    for u in 0..vertices {
        for v in u + 1..vertices {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}
