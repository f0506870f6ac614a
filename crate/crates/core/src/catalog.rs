//! Explicit representations of the small matroids and codes that appear in
//! the excluded-minor characterizations.

use thiserror::Error;

use crate::algebra::{Field, GfMatrix};
use crate::graph::{complete_bipartite, complete_graph, cycle_matroid};
use crate::matroid::{subsets_of_size, VectorMatroid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("no [{n},{k}] MDS construction over GF({q})")]
    FieldTooSmallForMds { n: usize, k: usize, q: usize },
    #[error("{name} is not representable over GF({q})")]
    NotRepresentable { name: String, q: usize },
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
}

/// Generator of `C(K4)`; a representation of `M(K4)` over every field.
pub fn g4_matrix(field: &Field) -> GfMatrix {
    GfMatrix::from_signed(
        field,
        &[
            &[1, 0, 0, 1, 0, -1],
            &[0, 1, 0, 1, 1, -1],
            &[0, 0, 1, 0, 1, -1],
        ],
    )
}

/// Generator of `C(K2,3)`; represents `M(K2,3)`.
pub fn g23_matrix(field: &Field) -> GfMatrix {
    GfMatrix::from_signed(
        field,
        &[
            &[1, 0, 0, 0, -1, -1],
            &[0, 1, 0, 0, 1, 0],
            &[0, 0, 1, 0, 0, 1],
            &[0, 0, 0, 1, 1, 1],
        ],
    )
}

/// Generator of `C(K2,3)⊥`; represents `M*(K2,3)`.
pub fn g23_dual_matrix(field: &Field) -> GfMatrix {
    GfMatrix::from_signed(
        field,
        &[&[1, -1, 0, -1, 1, 0], &[1, 0, -1, -1, 0, 1]],
    )
}

/// A `k x n` matrix all of whose `k`-column subsets are independent.
///
/// Columns are the moment-curve points `(1, a, ..., a^(k-1))` for every field
/// element `a`, then the point at infinity `(0, ..., 0, 1)`; for `k = 3` over
/// an even field the nucleus `(0, 1, 0)` extends the conic to a hyperoval.
pub fn mds_matrix(k: usize, n: usize, field: &Field) -> Result<GfMatrix, CatalogError> {
    let q = field.order();
    let too_small = CatalogError::FieldTooSmallForMds { n, k, q };
    if k > n {
        return Err(too_small);
    }
    if k == 0 {
        return Ok(GfMatrix::zeros(field, 0, n));
    }
    if k == n {
        return Ok(GfMatrix::identity(field, n));
    }
    let mut cols: Vec<Vec<u8>> = Vec::new();
    if k == 1 {
        cols = vec![vec![1]; n];
    } else if k == n - 1 {
        // [I | -1]: any n-1 of these columns are independent
        for i in 0..k {
            cols.push((0..k).map(|r| u8::from(r == i)).collect());
        }
        cols.push(vec![field.minus_one(); k]);
    } else {
        for a in field.elements() {
            cols.push((0..k as u32).map(|e| field.pow(a, e)).collect());
        }
        let mut inf = vec![0; k];
        inf[k - 1] = 1;
        cols.push(inf);
        if k == 3 && field.characteristic() == 2 {
            cols.push(vec![0, 1, 0]);
        }
        if cols.len() < n {
            return Err(too_small);
        }
        cols.truncate(n);
    }
    let mut m = GfMatrix::zeros(field, k, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    debug_assert!(subsets_of_size(n, k).all(|s| {
        let cols: Vec<usize> = s.iter().collect();
        m.select_columns(&cols).rank() == k
    }));
    Ok(m)
}

/// `U_{k,n}` represented by [`mds_matrix`].
pub fn uniform(k: usize, n: usize, field: &Field) -> Result<VectorMatroid, CatalogError> {
    let m = mds_matrix(k, n, field)?;
    Ok(VectorMatroid::new(m).expect("small ground set"))
}

/// The Fano plane `F7` as `[I3 | 110, 101, 011, 111]`; only representable in
/// characteristic 2.
pub fn fano(field: &Field) -> Result<VectorMatroid, CatalogError> {
    if field.characteristic() != 2 {
        return Err(CatalogError::NotRepresentable {
            name: "F7".into(),
            q: field.order(),
        });
    }
    let m = GfMatrix::from_signed(
        field,
        &[
            &[1, 0, 0, 1, 1, 0, 1],
            &[0, 1, 0, 1, 0, 1, 1],
            &[0, 0, 1, 0, 1, 1, 1],
        ],
    );
    Ok(VectorMatroid::new(m).expect("seven elements"))
}

/// Names accepted by [`named_matroid`].
pub const NAMES: &[&str] = &[
    "U24", "U36", "K4", "K23", "K23*", "F7", "F7*", "K5", "K5*", "K33", "K33*",
];

/// Builds a catalog matroid by name over `field`. A trailing `*` means the
/// dual.
pub fn named_matroid(name: &str, field: &Field) -> Result<VectorMatroid, CatalogError> {
    let (base, dual) = match name.strip_suffix('*') {
        Some(b) => (b, true),
        None => (name, false),
    };
    let not_rep = || CatalogError::NotRepresentable {
        name: name.to_string(),
        q: field.order(),
    };
    let m = match base {
        "U24" => uniform(2, 4, field).map_err(|_| not_rep())?,
        "U36" => uniform(3, 6, field).map_err(|_| not_rep())?,
        "K4" => cycle_matroid(&complete_graph(4), field).expect("small graph"),
        "K5" => cycle_matroid(&complete_graph(5), field).expect("small graph"),
        "K23" => cycle_matroid(&complete_bipartite(2, 3), field).expect("small graph"),
        "K33" => cycle_matroid(&complete_bipartite(3, 3), field).expect("small graph"),
        "F7" => fano(field)?,
        _ => return Err(CatalogError::UnknownName(name.to_string())),
    };
    Ok(if dual { m.dual() } else { m })
}

/// Whether every `k`-subset is independent and the rank is `k`.
pub fn is_uniform(m: &VectorMatroid, k: usize) -> bool {
    m.rank() == k && subsets_of_size(m.size(), k.min(m.size())).all(|s| m.rank_of(s) == s.len())
}

/// Seven elements, rank 3, simple, and exactly seven 3-point lines.
pub fn is_fano(m: &VectorMatroid) -> bool {
    m.size() == 7
        && m.rank() == 3
        && subsets_of_size(7, 2).all(|s| m.rank_of(s) == 2)
        && subsets_of_size(7, 3).filter(|&s| m.rank_of(s) == 2).count() == 7
}
