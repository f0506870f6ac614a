//! Vector matroids `M[A]`: rank, connectivity and closure oracles, minors,
//! duals, direct sums and isomorphism testing.

mod iso;
mod subset;

use std::collections::{HashMap, HashSet};
use std::sync::RwLock;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Field, GfMatrix};
use crate::text::{content_lines, ParseError};

pub use iso::{find_isomorphism, is_rank_preserving, ISO_CAP};
pub use subset::{subsets_of, subsets_of_size, GroundSubset};

/// Ground sets are carried as 64-bit masks.
pub const GROUND_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("ground set has {size} elements, limit is {cap}")]
    GroundSetTooLarge { size: usize, cap: usize },
    #[error("{labels} labels given for {cols} columns")]
    LabelCountMismatch { labels: usize, cols: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("contract and delete sets overlap")]
    OverlappingSets,
    #[error("matroids are over different fields")]
    FieldMismatch,
}

/// Which elements to contract (`X`) and delete (`Y`) to form `M / X \ Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MinorSpec {
    pub contract: GroundSubset,
    pub delete: GroundSubset,
}

#[derive(Clone)]
enum Columns {
    /// GF(2) with at most 64 rows: each column packed into a word.
    Binary(Vec<u64>),
    General(Vec<Vec<u8>>),
}

/// The vector matroid of a matrix, columns labelled by ground elements.
///
/// Ranks of queried subsets are memoized; the memo sits behind a lock so a
/// matroid can be shared between threads.
pub struct VectorMatroid {
    matrix: GfMatrix,
    labels: Vec<String>,
    columns: Columns,
    rank_full: usize,
    cache: RwLock<HashMap<u64, u8>>,
}

impl Clone for VectorMatroid {
    fn clone(&self) -> Self {
        VectorMatroid {
            matrix: self.matrix.clone(),
            labels: self.labels.clone(),
            columns: self.columns.clone(),
            rank_full: self.rank_full,
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for VectorMatroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VectorMatroid")
            .field("labels", &self.labels)
            .field("rank", &self.rank_full)
            .field("matrix", &self.matrix)
            .finish()
    }
}

/// An echelon basis grown one column at a time and shrunk in reverse order.
/// Each stored vector is zero on the pivots of the vectors below it.
struct RankStack<'a> {
    matroid: &'a VectorMatroid,
    binary: Vec<(u32, u64)>,
    general: Vec<(usize, Vec<u8>)>,
    // whether each pushed column enlarged the basis
    grew: Vec<bool>,
}

impl<'a> RankStack<'a> {
    fn new(matroid: &'a VectorMatroid) -> Self {
        RankStack {
            matroid,
            binary: Vec::new(),
            general: Vec::new(),
            grew: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.binary.len() + self.general.len()
    }

    fn push(&mut self, e: usize) {
        let grew = match &self.matroid.columns {
            Columns::Binary(cols) => {
                let mut v = cols[e];
                for &(p, b) in &self.binary {
                    if v >> p & 1 == 1 {
                        v ^= b;
                    }
                }
                if v != 0 {
                    self.binary.push((v.trailing_zeros(), v));
                }
                v != 0
            }
            Columns::General(cols) => {
                let f = self.matroid.field();
                let mut v = cols[e].clone();
                for (p, b) in &self.general {
                    let s = v[*p];
                    if s != 0 {
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = f.sub(*x, f.mul(s, y));
                        }
                    }
                }
                match v.iter().position(|&x| x != 0) {
                    Some(p) => {
                        let inv = f.inv(v[p]);
                        for x in v.iter_mut() {
                            *x = f.mul(*x, inv);
                        }
                        self.general.push((p, v));
                        true
                    }
                    None => false,
                }
            }
        };
        self.grew.push(grew);
    }

    fn pop(&mut self) {
        if self.grew.pop().expect("push before pop") {
            self.binary.pop();
            self.general.pop();
        }
    }
}

/// Writes into `out[mask]` the rank of the stack's contents plus `mask`, for
/// every `mask` over positions `i..low` extending `prefix`.
fn fill_low(stack: &mut RankStack<'_>, i: usize, low: usize, prefix: usize, out: &mut [u8]) {
    if i == low {
        out[prefix] = stack.rank() as u8;
        return;
    }
    fill_low(stack, i + 1, low, prefix, out);
    stack.push(i);
    fill_low(stack, i + 1, low, prefix | 1 << i, out);
    stack.pop();
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl VectorMatroid {
    /// `M[A]` with the default labels `1..n`.
    pub fn new(matrix: GfMatrix) -> Result<Self, MatroidError> {
        let labels = default_labels(matrix.cols());
        VectorMatroid::with_labels(matrix, labels)
    }

    pub fn with_labels(matrix: GfMatrix, labels: Vec<String>) -> Result<Self, MatroidError> {
        if matrix.cols() > GROUND_CAP {
            return Err(MatroidError::GroundSetTooLarge {
                size: matrix.cols(),
                cap: GROUND_CAP,
            });
        }
        if labels.len() != matrix.cols() {
            return Err(MatroidError::LabelCountMismatch {
                labels: labels.len(),
                cols: matrix.cols(),
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(MatroidError::DuplicateLabel(l.clone()));
            }
        }
        let field = matrix.field();
        let columns = if field.order() == 2 && matrix.rows() <= 64 {
            Columns::Binary(
                (0..matrix.cols())
                    .map(|c| {
                        (0..matrix.rows()).fold(0u64, |acc, r| acc | (u64::from(matrix.get(r, c)) << r))
                    })
                    .collect(),
            )
        } else {
            Columns::General((0..matrix.cols()).map(|c| matrix.column(c)).collect())
        };
        let mut m = VectorMatroid {
            matrix,
            labels,
            columns,
            rank_full: 0,
            cache: RwLock::new(HashMap::new()),
        };
        m.rank_full = m.compute_rank(m.ground());
        Ok(m)
    }

    /// The matroid with no elements.
    pub fn empty(field: &Field) -> Self {
        VectorMatroid::new(GfMatrix::zeros(field, 0, 0)).expect("empty matroid")
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &GfMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Number of ground elements.
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn ground(&self) -> GroundSubset {
        GroundSubset::full(self.size())
    }

    /// `r(E)`.
    pub fn rank(&self) -> usize {
        self.rank_full
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<GroundSubset, MatroidError> {
        labels
            .iter()
            .map(|l| {
                self.position(l.as_ref())
                    .ok_or_else(|| MatroidError::UnknownLabel(l.as_ref().to_string()))
            })
            .collect()
    }

    pub fn labels_of(&self, set: GroundSubset) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    fn compute_rank(&self, set: GroundSubset) -> usize {
        let mut stack = RankStack::new(self);
        for i in set.iter() {
            stack.push(i);
        }
        stack.rank()
    }

    /// `r(J)`, memoized.
    pub fn rank_of(&self, set: GroundSubset) -> usize {
        debug_assert!(set.is_subset_of(self.ground()));
        if set.is_empty() {
            return 0;
        }
        if let Some(&r) = self.cache.read().expect("rank cache").get(&set.bits()) {
            return r as usize;
        }
        let r = self.compute_rank(set);
        self.cache
            .write()
            .expect("rank cache")
            .insert(set.bits(), r as u8);
        r
    }

    /// `r(J)` without touching the memo.
    pub fn rank_uncached(&self, set: GroundSubset) -> usize {
        self.compute_rank(set)
    }

    /// `λ(X) = r(X) + r(E - X) - r(E)`.
    pub fn connectivity(&self, set: GroundSubset) -> usize {
        let rest = set.complement(self.size());
        self.rank_of(set) + self.rank_of(rest) - self.rank_full
    }

    /// `cl(X) = {e : r(X ∪ e) = r(X)}`.
    pub fn closure(&self, set: GroundSubset) -> GroundSubset {
        let r = self.rank_of(set);
        (0..self.size())
            .filter(|&e| set.contains(e) || self.rank_of(set.with(e)) == r)
            .collect()
    }

    /// Whether `e` is a loop.
    pub fn is_loop(&self, e: usize) -> bool {
        self.rank_of(GroundSubset::singleton(e)) == 0
    }

    /// Ranks of all `2^n` subsets, indexed by bit mask. Computed in parallel
    /// and bypassing the memo.
    pub fn rank_table(&self) -> Vec<u8> {
        let n = self.size();
        assert!(n <= 30, "rank table of {n} elements is too large");
        let low = n.min(12);
        let mut table = vec![0u8; 1 << n];
        table.par_chunks_mut(1 << low).enumerate().for_each(|(chunk, out)| {
            let mut stack = RankStack::new(self);
            for i in GroundSubset((chunk as u64) << low).iter() {
                stack.push(i);
            }
            fill_low(&mut stack, 0, low, 0, out);
        });
        table
    }

    /// A maximal independent subset of `set`, greedily by position.
    pub fn basis_of(&self, set: GroundSubset) -> GroundSubset {
        let mut basis = GroundSubset::EMPTY;
        for e in set.iter() {
            if self.rank_of(basis.with(e)) > basis.len() {
                basis = basis.with(e);
            }
        }
        basis
    }

    /// `M / X \ Y`. Labels are inherited; a dependent `X` is handled by
    /// contracting a basis of it and deleting the rest.
    pub fn apply_minor(&self, spec: MinorSpec) -> Result<VectorMatroid, MatroidError> {
        if !spec.contract.is_disjoint(spec.delete) {
            return Err(MatroidError::OverlappingSets);
        }
        let independent = self.basis_of(spec.contract);
        let mut a = self.matrix.row_basis();
        let mut pivot_rows = Vec::new();
        let f = self.field().clone();
        for c in independent.iter() {
            let r = (0..a.rows())
                .find(|r| !pivot_rows.contains(r) && a.get(*r, c) != 0)
                .expect("independent column has a fresh pivot");
            let inv = f.inv(a.get(r, c));
            for j in 0..a.cols() {
                let v = f.mul(a.get(r, j), inv);
                a.set(r, j, v);
            }
            for i in 0..a.rows() {
                let s = a.get(i, c);
                if i != r && s != 0 {
                    for j in 0..a.cols() {
                        let v = f.sub(a.get(i, j), f.mul(s, a.get(r, j)));
                        a.set(i, j, v);
                    }
                }
            }
            pivot_rows.push(r);
        }
        let keep_rows: Vec<usize> = (0..a.rows()).filter(|r| !pivot_rows.contains(r)).collect();
        let gone = spec.contract.union(spec.delete);
        let keep_cols: Vec<usize> = (0..self.size()).filter(|&c| !gone.contains(c)).collect();
        let matrix = a.select_rows(&keep_rows).select_columns(&keep_cols);
        let labels = keep_cols.iter().map(|&c| self.labels[c].clone()).collect();
        VectorMatroid::with_labels(matrix, labels)
    }

    pub fn delete(&self, set: GroundSubset) -> VectorMatroid {
        self.apply_minor(MinorSpec {
            contract: GroundSubset::EMPTY,
            delete: set,
        })
        .expect("deletion only")
    }

    pub fn contract(&self, set: GroundSubset) -> VectorMatroid {
        self.apply_minor(MinorSpec {
            contract: set,
            delete: GroundSubset::EMPTY,
        })
        .expect("contraction only")
    }

    /// The dual matroid, represented by `[-Bᵀ | I]` when `M` is represented
    /// by `[I | B]`, with columns returned to their original positions.
    pub fn dual(&self) -> VectorMatroid {
        let matrix = self.matrix.orthogonal_complement();
        VectorMatroid::with_labels(matrix, self.labels.clone()).expect("same ground set")
    }

    /// `M1 ⊕ M2` with a block-diagonal representation. Clashing labels of the
    /// second summand get a `'` suffix until unique.
    pub fn direct_sum(&self, other: &VectorMatroid) -> Result<VectorMatroid, MatroidError> {
        if self.field() != other.field() {
            return Err(MatroidError::FieldMismatch);
        }
        let (a, b) = (self.matrix.row_basis(), other.matrix.row_basis());
        let (n1, n2) = (self.size(), other.size());
        let mut m = GfMatrix::zeros(self.field(), a.rows() + b.rows(), n1 + n2);
        for i in 0..a.rows() {
            for j in 0..n1 {
                m.set(i, j, a.get(i, j));
            }
        }
        for i in 0..b.rows() {
            for j in 0..n2 {
                m.set(a.rows() + i, n1 + j, b.get(i, j));
            }
        }
        let mut labels = self.labels.clone();
        let mut used: HashSet<String> = labels.iter().chain(&other.labels).cloned().collect();
        for l in &other.labels {
            let mut name = l.clone();
            if self.labels.contains(&name) {
                while used.contains(&name) {
                    name.push('\'');
                }
                used.insert(name.clone());
            }
            labels.push(name);
        }
        VectorMatroid::with_labels(m, labels)
    }

    /// A rank-preserving bijection from `self` onto `other`
    /// (`result[i]` is the image of element `i`), if one exists.
    pub fn is_isomorphic(&self, other: &VectorMatroid) -> Result<Option<Vec<usize>>, MatroidError> {
        for m in [self, other] {
            if m.size() > ISO_CAP {
                return Err(MatroidError::GroundSetTooLarge {
                    size: m.size(),
                    cap: ISO_CAP,
                });
            }
        }
        if self.size() != other.size() || self.rank() != other.rank() {
            return Ok(None);
        }
        Ok(find_isomorphism(self.size(), &self.rank_table(), &other.rank_table()))
    }

    /// Matroid file text: the matrix, plus a `labels` line when the labels
    /// are not the default `1..n`.
    pub fn to_text(&self) -> String {
        let mut s = self.matrix.to_text();
        if self.labels != default_labels(self.size()) {
            s.push_str("labels ");
            s.push_str(&self.labels.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<VectorMatroid, ParseError> {
        let (matrix, labels) = parse_labelled_matrix(text)?;
        VectorMatroid::with_labels(matrix, labels).map_err(|e| ParseError::new(1, e.to_string()))
    }
}

/// Matrix text optionally followed by a `labels ...` line.
pub(crate) fn parse_labelled_matrix(text: &str) -> Result<(GfMatrix, Vec<String>), ParseError> {
    let mut lines = content_lines(text);
    let matrix = GfMatrix::parse_lines(&mut lines)?;
    let mut labels = default_labels(matrix.cols());
    if let Some((lineno, line)) = lines.next() {
        let mut toks = line.split_whitespace();
        if toks.next() != Some("labels") {
            return Err(ParseError::new(lineno, "expected `labels ...` or end of file"));
        }
        labels = toks.map(str::to_string).collect();
        if labels.len() != matrix.cols() {
            return Err(ParseError::new(
                lineno,
                format!("{} labels for {} columns", labels.len(), matrix.cols()),
            ));
        }
        if let Some((lineno, _)) = lines.next() {
            return Err(ParseError::new(lineno, "trailing content"));
        }
    }
    Ok((matrix, labels))
}
