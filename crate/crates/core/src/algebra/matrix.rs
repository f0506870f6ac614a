use std::fmt;

use super::{AlgebraError, Field};
use crate::text::ParseError;

/// A dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl GfMatrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(&bad) = data.iter().find(|&&x| !field.contains(x)) {
            return Err(AlgebraError::EntryOutOfRange {
                entry: bad as u32,
                q: field.order(),
            });
        }
        Ok(GfMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        GfMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = GfMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is needed when there
    /// are no rows.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u8>]) -> Result<Self, AlgebraError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(AlgebraError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        GfMatrix::new(field, rows.len(), cols, data)
    }

    /// Builds a matrix from signed integer entries, reading each value in the
    /// prime subfield (so `-1` becomes `p - 1`).
    pub fn from_signed(field: &Field, rows: &[&[i64]]) -> Self {
        let p = field.characteristic() as i64;
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().map(|&x| x.rem_euclid(p) as u8)
            })
            .collect();
        GfMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// The submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> GfMatrix {
        let mut out = GfMatrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> GfMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        GfMatrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Applies `f` to every entry.
    pub fn map_entries(&self, f: impl Fn(u8) -> u8) -> GfMatrix {
        let data = self.data.iter().map(|&x| f(x)).collect();
        GfMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u8) {
        for c in 0..self.cols {
            let v = self.field.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// row[dst] -= s * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, s: u8) {
        if s == 0 {
            return;
        }
        for c in 0..self.cols {
            let v = self
                .field
                .sub(self.get(dst, c), self.field.mul(s, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    /// Reduced row-echelon form (zero rows kept at the bottom) and the pivot
    /// columns in increasing order.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.field.inv(m.get(r, c));
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let s = m.get(i, c);
                    m.sub_row_multiple(i, r, s);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The nonzero rows of the reduced row-echelon form: a basis of the row
    /// space.
    pub fn row_basis(&self) -> GfMatrix {
        let (m, pivots) = self.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        m.select_rows(&keep)
    }

    /// Standard form `[I | B]` of a full-row-rank matrix, with `perm[j]` the
    /// original column placed at position `j`.
    ///
    /// If the matrix already contains every unit column, the first occurrence
    /// of each is used as the identity block and no row operations are done.
    pub fn standard_form(&self) -> Result<(GfMatrix, Vec<usize>), AlgebraError> {
        let unit_cols: Option<Vec<usize>> = (0..self.rows)
            .map(|i| {
                (0..self.cols).find(|&c| (0..self.rows).all(|r| self.get(r, c) == u8::from(r == i)))
            })
            .collect();
        let (reduced, pivots) = match unit_cols {
            Some(cols) => (self.clone(), cols),
            None => {
                let (m, pivots) = self.rref();
                if pivots.len() < self.rows {
                    return Err(AlgebraError::RankDeficient {
                        rank: pivots.len(),
                        rows: self.rows,
                    });
                }
                (m, pivots)
            }
        };
        let mut perm = pivots.clone();
        perm.extend((0..self.cols).filter(|c| !pivots.contains(c)));
        Ok((reduced.select_columns(&perm), perm))
    }

    /// A basis of the orthogonal complement of the row space, as rows:
    /// `[-Bᵀ | I]` against the standard form `[I | B]`, columns put back in
    /// their original order.
    pub fn orthogonal_complement(&self) -> GfMatrix {
        let f = self.field.clone();
        let n = self.cols;
        let basis = self.row_basis();
        let r = basis.rows();
        if r == 0 {
            return GfMatrix::identity(&f, n);
        }
        if r == n {
            return GfMatrix::zeros(&f, 0, n);
        }
        let (sf, perm) = basis.standard_form().expect("row basis has full row rank");
        let mut d = GfMatrix::zeros(&f, n - r, n);
        for i in 0..n - r {
            for j in 0..r {
                d.set(i, j, f.neg(sf.get(j, r + i)));
            }
            d.set(i, r + i, 1);
        }
        d.unpermute_columns(&perm)
    }

    /// Undo a column permutation produced by [`GfMatrix::standard_form`].
    pub fn unpermute_columns(&self, perm: &[usize]) -> GfMatrix {
        let mut inverse = vec![0; perm.len()];
        for (j, &c) in perm.iter().enumerate() {
            inverse[c] = j;
        }
        self.select_columns(&inverse)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Whether the two matrices have the same row space (same column count
    /// and field required).
    pub fn same_row_space(&self, other: &GfMatrix) -> bool {
        self.field == other.field && self.cols == other.cols && self.row_basis() == other.row_basis()
    }

    pub fn mul_mat(&self, other: &GfMatrix) -> Result<GfMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = GfMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0;
                for t in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, t), other.get(t, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Text form: a header line `q m n` and `m` lines of `n` element codes.
    /// With no columns the row lines are omitted.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.field.order_text(), self.rows, self.cols);
        if self.cols == 0 {
            return s;
        }
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the text form from numbered lines, leaving any trailing
    /// sections unconsumed.
    pub(crate) fn parse_lines<'a>(
        lines: &mut impl Iterator<Item = (usize, &'a str)>,
    ) -> Result<GfMatrix, ParseError> {
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(1, "missing header line `q m n`"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(ParseError::new(lineno, "header must be `q m n`"));
        }
        let field = Field::parse_order(parts[0]).map_err(|e| ParseError::new(lineno, e.to_string()))?;
        let rows: usize = parts[1]
            .parse()
            .map_err(|_| ParseError::new(lineno, "bad row count"))?;
        let cols: usize = parts[2]
            .parse()
            .map_err(|_| ParseError::new(lineno, "bad column count"))?;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..if cols == 0 { 0 } else { rows } {
            let (lineno, line) = lines
                .next()
                .ok_or_else(|| ParseError::new(lineno + 1, "unexpected end of matrix"))?;
            let before = data.len();
            for tok in line.split_whitespace() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| ParseError::new(lineno, format!("bad entry `{tok}`")))?;
                if v as usize >= field.order() {
                    return Err(ParseError::new(
                        lineno,
                        format!("entry {v} outside GF({})", field.order()),
                    ));
                }
                data.push(v as u8);
            }
            if data.len() - before != cols {
                return Err(ParseError::new(
                    lineno,
                    format!("expected {cols} entries, found {}", data.len() - before),
                ));
            }
        }
        Ok(GfMatrix::new(&field, rows, cols, data).expect("validated while parsing"))
    }

    pub fn from_text(text: &str) -> Result<GfMatrix, ParseError> {
        let mut lines = crate::text::content_lines(text);
        let m = GfMatrix::parse_lines(&mut lines)?;
        if let Some((lineno, _)) = lines.next() {
            return Err(ParseError::new(lineno, "trailing content after matrix"));
        }
        Ok(m)
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}
