use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A matrix is stored sparsely when at most one entry in `SPARSE_DENOMINATOR`
/// is nonzero.
const SPARSE_DENOMINATOR: usize = 10;

#[derive(Clone)]
enum Store {
    /// Row-major, `rows * cols` entries.
    Dense(Vec<BigInt>),
    /// One list per row of `(column, nonzero value)`, sorted by column.
    Sparse(Vec<Vec<(usize, BigInt)>>),
}

/// Integer matrix with arbitrary-precision entries.
///
/// The storage layout is chosen from the density at construction time and is
/// invisible to callers: entry access is total, and a sparse and a dense
/// matrix with the same entries compare equal.
#[derive(Clone)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    store: Store,
}

fn prefers_sparse(rows: usize, cols: usize, nnz: usize) -> bool {
    let cells = rows.saturating_mul(cols);
    cells > 0 && nnz.saturating_mul(SPARSE_DENOMINATOR) <= cells
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, store: Store::Sparse(vec![Vec::new(); rows]) }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_row_entries(n, n, (0..n).map(|i| vec![(i, BigInt::one())]).collect())
    }

    /// Builds a matrix from rows of equal length.
    ///
    /// Panics on ragged input; use [`ExactMatrix::try_from_rows`] for untrusted data.
    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Self {
        Self::try_from_rows(rows).expect("rows of unequal length")
    }

    pub fn try_from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::Dimension(alloc::format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            data.extend(row.into_iter().map(Into::into));
        }
        Ok(Self::from_dense(r, c, data))
    }

    /// Row-major dense data; the storage is re-chosen from the density.
    pub fn from_dense(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "dense data has wrong length");
        let nnz = data.iter().filter(|x| !x.is_zero()).count();
        let m = ExactMatrix { rows, cols, store: Store::Dense(data) };
        if prefers_sparse(rows, cols, nnz) {
            m.to_sparse()
        } else {
            m
        }
    }

    /// Builds a matrix from per-row `(column, value)` lists. Entries may be
    /// unsorted, repeated (they are summed) or zero.
    pub fn from_row_entries(rows: usize, cols: usize, entries: Vec<Vec<(usize, BigInt)>>) -> Self {
        assert_eq!(entries.len(), rows, "one entry list per row");
        let mut nnz = 0;
        let normalized: Vec<Vec<(usize, BigInt)>> = entries
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|e| e.0);
                let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    assert!(c < cols, "column {c} out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 += v,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                nnz += out.len();
                out
            })
            .collect();
        let m = ExactMatrix { rows, cols, store: Store::Sparse(normalized) };
        if prefers_sparse(rows, cols, nnz) || rows * cols == 0 {
            m
        } else {
            m.to_dense()
        }
    }

    /// A single column.
    pub fn column(v: &[BigInt]) -> Self {
        Self::from_dense(v.len(), 1, v.to_vec())
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut data = vec![BigInt::zero(); rows * columns.len()];
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                data[i * columns.len() + j] = x.clone();
            }
        }
        Self::from_dense(rows, columns.len(), data)
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        assert!(diag.len() <= rows.min(cols));
        let mut entries = vec![Vec::new(); rows];
        for (i, d) in diag.iter().enumerate() {
            entries[i].push((i, d.clone()));
        }
        Self::from_row_entries(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.store, Store::Sparse(_))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        match &self.store {
            Store::Dense(d) => d[i * self.cols + j].clone(),
            Store::Sparse(s) => match s[i].binary_search_by_key(&j, |e| e.0) {
                Ok(k) => s[i][k].1.clone(),
                Err(_) => BigInt::zero(),
            },
        }
    }

    /// Nonzero entries of row `i` in column order.
    pub fn row_nonzeros(&self, i: usize) -> RowNonzeros<'_> {
        assert!(i < self.rows, "row {i} out of range");
        match &self.store {
            Store::Dense(d) => {
                RowNonzeros::Dense(d[i * self.cols..(i + 1) * self.cols].iter().enumerate())
            }
            Store::Sparse(s) => RowNonzeros::Sparse(s[i].iter()),
        }
    }

    pub fn nnz(&self) -> usize {
        match &self.store {
            Store::Dense(d) => d.iter().filter(|x| !x.is_zero()).count(),
            Store::Sparse(s) => s.iter().map(Vec::len).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn to_dense(&self) -> Self {
        match &self.store {
            Store::Dense(_) => self.clone(),
            Store::Sparse(s) => {
                let mut data = vec![BigInt::zero(); self.rows * self.cols];
                for (i, row) in s.iter().enumerate() {
                    for (j, v) in row {
                        data[i * self.cols + j] = v.clone();
                    }
                }
                ExactMatrix { rows: self.rows, cols: self.cols, store: Store::Dense(data) }
            }
        }
    }

    pub fn to_sparse(&self) -> Self {
        match &self.store {
            Store::Sparse(_) => self.clone(),
            Store::Dense(_) => ExactMatrix {
                rows: self.rows,
                cols: self.cols,
                store: Store::Sparse(self.sparse_rows()),
            },
        }
    }

    /// Rows as `(column, value)` lists.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        (0..self.rows)
            .map(|i| self.row_nonzeros(i).map(|(j, v)| (j, v.clone())).collect())
            .collect()
    }

    /// Rows as dense vectors.
    pub fn dense_rows(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in self.row_nonzeros(i) {
                row[j] = v.clone();
            }
        }
        out
    }

    pub fn column_vector(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for (j, v) in self.row_nonzeros(i) {
                entries[j].push((i, v.clone()));
            }
        }
        Self::from_row_entries(self.cols, self.rows, entries)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = vec![BigInt::zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut entries = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            for (k, a) in self.row_nonzeros(i) {
                for (j, b) in other.row_nonzeros(k) {
                    if acc[j].is_zero() {
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            let mut row = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = core::mem::take(&mut acc[j]);
                if !v.is_zero() {
                    row.push((j, v));
                }
            }
            touched.clear();
            entries.push(row);
        }
        Ok(Self::from_row_entries(self.rows, other.cols, entries))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(alloc::format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row_nonzeros(i).map(|(j, a)| a * &v[j]).sum())
            .collect())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension(alloc::format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let entries = (0..self.rows)
            .map(|i| {
                self.row_nonzeros(i)
                    .map(|(j, v)| (j, v.clone()))
                    .chain(other.row_nonzeros(i).map(|(j, v)| (j + self.cols, v.clone())))
                    .collect()
            })
            .collect();
        Ok(Self::from_row_entries(self.rows, self.cols + other.cols, entries))
    }

    pub fn neg(&self) -> ExactMatrix {
        let entries = self
            .sparse_rows()
            .into_iter()
            .map(|row| row.into_iter().map(|(j, v)| (j, -v)).collect())
            .collect();
        Self::from_row_entries(self.rows, self.cols, entries)
    }

    /// Selects the given rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> ExactMatrix {
        let entries = rows
            .iter()
            .map(|&i| self.row_nonzeros(i).map(|(j, v)| (j, v.clone())).collect())
            .collect();
        Self::from_row_entries(rows.len(), self.cols, entries)
    }

    /// Selects the given columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> ExactMatrix {
        self.transpose().select_rows(cols).transpose()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension(alloc::format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.dense_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
    }

    /// Largest absolute value of an entry (zero for empty matrices).
    pub fn max_abs(&self) -> BigInt {
        (0..self.rows)
            .flat_map(|i| self.row_nonzeros(i).map(|(_, v)| v.abs()))
            .max()
            .unwrap_or_default()
    }
}

pub enum RowNonzeros<'a> {
    Dense(core::iter::Enumerate<core::slice::Iter<'a, BigInt>>),
    Sparse(core::slice::Iter<'a, (usize, BigInt)>),
}

impl<'a> Iterator for RowNonzeros<'a> {
    type Item = (usize, &'a BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        match self {
            RowNonzeros::Dense(it) => it.find(|(_, v)| !v.is_zero()),
            RowNonzeros::Sparse(it) => it.next().map(|(j, v)| (*j, v)),
        }
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|i| self.row_nonzeros(i).eq(other.row_nonzeros(i)))
    }
}

impl Eq for ExactMatrix {}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix {}x{} ", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            f.debug_list().entries(self.dense_rows()).finish()
        } else {
            write!(f, "({} nonzeros)", self.nnz())
        }
    }
}
