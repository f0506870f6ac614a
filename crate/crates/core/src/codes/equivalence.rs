use serde::Serialize;

use super::{CodeError, LinearCode};
use crate::algebra::GfMatrix;

/// Longest codes accepted by [`are_equivalent`].
pub const EQUIVALENCE_CAP: usize = 7;

/// Codewords enumerated for the weight-distribution filter, at most.
const WEIGHT_FILTER_LIMIT: usize = 1 << 16;

/// Coordinate `i` of the first code, scaled by `scales[i]`, sits at
/// position `permutation[i]` of the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub permutation: Vec<usize>,
    pub scales: Vec<u8>,
}

impl Equivalence {
    /// The image of `c` under the map, carrying `target_labels`.
    pub fn apply(&self, c: &LinearCode, target_labels: &[String]) -> Result<LinearCode, CodeError> {
        let g = c.generator();
        let f = c.field();
        let mut out = GfMatrix::zeros(f, g.rows(), g.cols());
        for (i, (&to, &s)) in self.permutation.iter().zip(&self.scales).enumerate() {
            for r in 0..g.rows() {
                out.set(r, to, f.mul(s, g.get(r, i)));
            }
        }
        LinearCode::with_labels(out, target_labels.to_vec())
    }
}

/// Number of codewords of each Hamming weight `0..=n`.
pub fn weight_distribution(c: &LinearCode) -> Vec<u64> {
    let basis = c.generator().row_basis();
    let f = c.field();
    let (k, n, q) = (basis.rows(), c.length(), f.order());
    let mut dist = vec![0u64; n + 1];
    let mut coeffs = vec![0u8; k];
    loop {
        let weight = (0..n)
            .filter(|&j| (0..k).fold(0, |acc, r| f.add(acc, f.mul(coeffs[r], basis.get(r, j)))) != 0)
            .count();
        dist[weight] += 1;
        let Some(pos) = coeffs.iter().position(|&x| (x as usize) < q - 1) else {
            break;
        };
        coeffs[pos] += 1;
        coeffs[..pos].fill(0);
    }
    dist
}

/// Searches for a monomial map from `a` onto `b`, trying coordinates and
/// scales in increasing order and pruning whenever the partial images of the
/// two codes on the placed coordinates differ.
pub fn are_equivalent(a: &LinearCode, b: &LinearCode) -> Result<Option<Equivalence>, CodeError> {
    let n = a.length();
    for c in [a, b] {
        if c.length() > EQUIVALENCE_CAP {
            return Err(CodeError::LengthTooLarge {
                length: c.length(),
                cap: EQUIVALENCE_CAP,
            });
        }
    }
    if a.field() != b.field() {
        return Err(CodeError::FieldMismatch);
    }
    if n != b.length() || a.dimension() != b.dimension() {
        return Ok(None);
    }
    let q = a.field().order();
    if q.checked_pow(a.dimension() as u32).is_some_and(|size| size <= WEIGHT_FILTER_LIMIT)
        && weight_distribution(a) != weight_distribution(b)
    {
        return Ok(None);
    }
    let ga = a.generator().row_basis();
    let gb = b.generator().row_basis();
    let mut search = Search {
        ga: &ga,
        gb: &gb,
        source_of: Vec::with_capacity(n),
        scale_of: Vec::with_capacity(n),
        used: vec![false; n],
    };
    if !search.extend() {
        return Ok(None);
    }
    let mut permutation = vec![0; n];
    let mut scales = vec![0; n];
    for (to, (&from, &s)) in search.source_of.iter().zip(&search.scale_of).enumerate() {
        permutation[from] = to;
        scales[from] = s;
    }
    Ok(Some(Equivalence { permutation, scales }))
}

struct Search<'a> {
    ga: &'a GfMatrix,
    gb: &'a GfMatrix,
    source_of: Vec<usize>,
    scale_of: Vec<u8>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self) -> bool {
        let t = self.source_of.len();
        let n = self.used.len();
        if t == n {
            return true;
        }
        let f = self.ga.field().clone();
        let target: Vec<usize> = (0..=t).collect();
        let target_space = self.gb.select_columns(&target);
        for i in 0..n {
            if self.used[i] {
                continue;
            }
            let zero_column = (0..self.ga.rows()).all(|r| self.ga.get(r, i) == 0);
            let scales: Vec<u8> = if zero_column { vec![1] } else { f.elements().filter(|&s| s != 0).collect() };
            for s in scales {
                self.source_of.push(i);
                self.scale_of.push(s);
                if self.partial_image().same_row_space(&target_space) {
                    self.used[i] = true;
                    if self.extend() {
                        return true;
                    }
                    self.used[i] = false;
                }
                self.source_of.pop();
                self.scale_of.pop();
            }
        }
        false
    }

    fn partial_image(&self) -> GfMatrix {
        let f = self.ga.field();
        let mut m = GfMatrix::zeros(f, self.ga.rows(), self.source_of.len());
        for (j, (&i, &s)) in self.source_of.iter().zip(&self.scale_of).enumerate() {
            for r in 0..self.ga.rows() {
                m.set(r, j, f.mul(s, self.ga.get(r, i)));
            }
        }
        m
    }
}
