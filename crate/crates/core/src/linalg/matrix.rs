use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::scalar::Rational;

/// Sparse matrix over the rationals, stored column by column. Zero entries are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<BTreeMap<usize, Rational>>,
}

pub type SparseRow = BTreeMap<usize, Rational>;

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![BTreeMap::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.columns[i].insert(i, Rational::one());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions
    /// are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            m.add_to(r, c, &v);
        }
        m
    }

    /// Builds a matrix from dense rows.
    pub fn from_dense(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.columns[c].insert(r, v.clone());
                }
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| super::scalar::int(v)).collect())
            .collect();
        Self::from_dense(&dense, cols)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: Vec<SparseRow>) -> Self {
        let mut m = SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        };
        for col in &mut m.columns {
            col.retain(|r, v| {
                assert!(*r < rows, "row index {r} out of range {rows}");
                !v.is_zero()
            });
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c]
            .get(&r)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        add_entry(&mut self.columns[c], r, v);
    }

    pub fn column(&self, c: usize) -> &SparseRow {
        &self.columns[c]
    }

    /// Entries in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, v)| (r, c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn is_integral(&self) -> bool {
        self.entries().all(|(_, _, v)| v.is_integer())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.columns[r].insert(c, v.clone());
        }
        t
    }

    pub fn scaled(&self, q: &Rational) -> SparseMatrix {
        if q.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        let mut m = self.clone();
        for col in &mut m.columns {
            for v in col.values_mut() {
                *v *= q;
            }
        }
        m
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (j, col) in other.columns.iter().enumerate() {
            let target = &mut out.columns[j];
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    add_entry(target, *i, &(a * b));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            add_entry(&mut out.columns[c], r, v);
        }
        out
    }

    /// `self * x` for a dense vector `x`.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        let mut y = vec![Rational::zero(); self.rows];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, v) in &self.columns[c] {
                y[r.to_owned()] += v * xc;
            }
        }
        y
    }

    pub fn apply_sparse(&self, x: &SparseRow) -> SparseRow {
        let mut y = SparseRow::new();
        for (c, xc) in x {
            for (r, v) in &self.columns[*c] {
                add_entry(&mut y, *r, &(v * xc));
            }
        }
        y
    }

    pub fn to_sparse_rows(&self) -> Vec<SparseRow> {
        let mut rows = vec![SparseRow::new(); self.rows];
        for (r, c, v) in self.entries() {
            rows[r].insert(c, v.clone());
        }
        rows
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = SparseMatrix::zeros(self.rows + other.rows, self.cols);
        for (r, c, v) in self.entries() {
            out.columns[c].insert(r, v.clone());
        }
        for (r, c, v) in other.entries() {
            out.columns[c].insert(self.rows + r, v.clone());
        }
        out
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows);
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        SparseMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            columns,
        }
    }

    pub fn rank(&self) -> usize {
        sparse_rank(self.columns.clone(), self.rows)
    }

    /// Reduced row echelon form of the row space.
    pub fn rref(&self) -> Rref {
        Rref::from_rows(self.to_sparse_rows(), self.cols)
    }

    /// A basis of the kernel, one vector per free column of the reduced row
    /// echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let rref = self.rref();
        rref.kernel_basis()
    }

    /// Some `x` with `self * x = b`, or `None` when the system is
    /// inconsistent. Free variables are set to zero, so the answer is a
    /// function of the input alone.
    pub fn solve_particular(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut rows = self.to_sparse_rows();
        for (r, v) in b.iter().enumerate() {
            if !v.is_zero() {
                rows[r].insert(self.cols, v.clone());
            }
        }
        let rref = Rref::from_rows(rows, self.cols + 1);
        if rref.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            if let Some(v) = row.get(&self.cols) {
                x[p] = v.clone();
            }
        }
        Some(x)
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn add_entry(map: &mut SparseRow, k: usize, v: &Rational) {
    if v.is_zero() {
        return;
    }
    let remove = match map.get_mut(&k) {
        Some(e) => {
            *e += v;
            e.is_zero()
        }
        None => {
            map.insert(k, v.clone());
            false
        }
    };
    if remove {
        map.remove(&k);
    }
}

/// `target -= factor * source`.
fn sub_scaled(target: &mut SparseRow, source: &SparseRow, factor: &Rational) {
    for (c, v) in source {
        add_entry(target, *c, &(-(v * factor)));
    }
}

/// Rank by sparse elimination. Each step pivots in a shortest remaining row,
/// on the entry whose column is sparsest, preferring entries of size one;
/// the pivot order only affects fill-in.
fn sparse_rank(mut rows: Vec<SparseRow>, cols: usize) -> usize {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for (r, row) in rows.iter().enumerate() {
        for c in row.keys() {
            col_rows[*c].insert(r);
        }
    }
    let mut queue: BTreeSet<(usize, usize)> = rows
        .iter()
        .enumerate()
        .filter(|(_, row)| !row.is_empty())
        .map(|(r, row)| (row.len(), r))
        .collect();
    let mut rank = 0;
    while let Some((_, pr)) = queue.pop_first() {
        let pivot_row = std::mem::take(&mut rows[pr]);
        let (pc, pv) = pivot_row
            .iter()
            .min_by_key(|(c, v)| (col_rows[**c].len(), !v.abs().is_one()))
            .map(|(c, v)| (*c, v.clone()))
            .expect("queued rows are nonzero");
        for c in pivot_row.keys() {
            col_rows[*c].remove(&pr);
        }
        let others: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in others {
            queue.remove(&(rows[r].len(), r));
            let factor = &rows[r][&pc] / &pv;
            for (c, v) in &pivot_row {
                let entry = rows[r].entry(*c).or_insert_with(Rational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    rows[r].remove(c);
                    col_rows[*c].remove(&r);
                } else {
                    col_rows[*c].insert(r);
                }
            }
            if !rows[r].is_empty() {
                queue.insert((rows[r].len(), r));
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon form: `rows[i]` has a leading 1 in column
/// `pivots[i]`, and every other row is zero in that column. Pivots ascend.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<SparseRow>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Rref {
    /// Rows are absorbed in order; each new row is reduced against the
    /// current pivots and, if nonzero, contributes its lowest column as a new
    /// pivot. The reduced form is unique, so the order only affects cost.
    pub fn from_rows(rows: Vec<SparseRow>, cols: usize) -> Rref {
        let mut pivot_rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for mut row in rows {
            let hits: Vec<(usize, Rational)> = row
                .iter()
                .filter(|(c, _)| pivot_rows.contains_key(c))
                .map(|(c, v)| (*c, v.clone()))
                .collect();
            for (c, v) in hits {
                sub_scaled(&mut row, &pivot_rows[&c], &v);
            }
            let Some((&lead, lv)) = row.iter().next() else {
                continue;
            };
            let inv = lv.recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
            for other in pivot_rows.values_mut() {
                if let Some(f) = other.get(&lead).cloned() {
                    sub_scaled(other, &row, &f);
                }
            }
            pivot_rows.insert(lead, row);
        }
        let (pivots, rows) = pivot_rows.into_iter().unzip();
        Rref { rows, pivots, cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if let Some(x) = row.get(&f) {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Reduces `v` against the row space; the result is zero in every pivot
    /// column and is zero exactly when `v` lies in the row space.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut out = v.clone();
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            if let Some(f) = out.get(p).cloned() {
                sub_scaled(&mut out, row, &f);
            }
        }
        out
    }

    /// Coordinates of `v` with respect to the reduced rows, if `v` lies in the
    /// row space.
    pub fn coordinates(&self, v: &SparseRow) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self
            .pivots
            .iter()
            .map(|p| v.get(p).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let mut rest = v.clone();
        for (row, c) in self.rows.iter().zip(&coords) {
            sub_scaled(&mut rest, row, c);
        }
        rest.is_empty().then_some(coords)
    }
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseRow, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}
