use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;
use super::sparse;

/// Smith normal form `u * m * v = d` with `u`, `v` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: ExactMatrix,
    pub u: ExactMatrix,
    pub v: ExactMatrix,
}

impl SmithForm {
    /// The `min(rows, cols)` diagonal entries of `d`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i)).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with both transforms.
pub fn snf(m: &ExactMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.dense_rows();
    let mut u = ExactMatrix::identity(r).dense_rows();
    let mut v = ExactMatrix::identity(c).dense_rows();
    let rank = reduce(&mut a, c, Some(&mut u), Some(&mut v));
    let diag: Vec<BigInt> = (0..rank).map(|i| a[i][i].clone()).collect();
    SmithForm {
        d: ExactMatrix::diagonal(r, c, &diag),
        u: ExactMatrix::try_from_rows(u).expect("square"),
        v: ExactMatrix::try_from_rows(v).expect("square"),
    }
}

/// Nonzero invariant factors (including ones) in divisibility order; the
/// length is the rank. No transforms are formed, and sparse inputs go through
/// the sparse elimination engine first.
pub fn smith_diagonal(m: &ExactMatrix) -> Vec<BigInt> {
    if m.is_sparse() {
        return sparse::smith_diagonal_sparse(m);
    }
    let mut a = m.dense_rows();
    dense_diagonal(&mut a, m.cols())
}

pub(crate) fn dense_diagonal(a: &mut [Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let rank = reduce(a, cols, None, None);
    (0..rank).map(|i| a[i][i].clone()).collect()
}

fn swap_cols(m: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// `row[dst] -= q * row[src]` on every row (a column operation).
fn sub_col(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = &row[src] * q;
            row[dst] -= t;
        }
    }
}

fn sub_row(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (s, d) = if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= y * q;
        }
    }
}

fn negate_row(m: &mut [Vec<BigInt>], i: usize) {
    for x in m[i].iter_mut() {
        *x = -core::mem::take(x);
    }
}

/// Position of the nonzero entry of least absolute value in `a[t..][t..]`.
fn min_entry(a: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |b| ax < b.2) {
                let unit = ax.is_one();
                best = Some((i, j, ax));
                if unit {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

/// In-place reduction of `a` to Smith form, applying row operations to `u`
/// and column operations to `v` when given. Returns the rank.
fn reduce(
    a: &mut [Vec<BigInt>],
    cols: usize,
    mut u: Option<&mut Vec<Vec<BigInt>>>,
    mut v: Option<&mut Vec<Vec<BigInt>>>,
) -> usize {
    let rows = a.len();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_entry(a, t, cols) else { break };
        move_pivot(a, t, pi, pj, u.as_deref_mut(), v.as_deref_mut());
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    sub_row(a, i, t, &q);
                    if let Some(u) = u.as_deref_mut() {
                        sub_row(u, i, t, &q);
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    sub_col(a, j, t, &q);
                    if let Some(v) = v.as_deref_mut() {
                        sub_col(v, j, t, &q);
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // A remainder smaller than the pivot is left in row or column t.
                let (mut pi, mut pj) = (t, t);
                let mut best = a[t][t].abs();
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < best {
                        best = a[i][t].abs();
                        (pi, pj) = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < best {
                        best = a[t][j].abs();
                        (pi, pj) = (t, j);
                    }
                }
                move_pivot(a, t, pi, pj, u.as_deref_mut(), v.as_deref_mut());
                continue;
            }
            // Row and column t are clear; enforce divisibility of the rest.
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| a[i][t + 1..cols].iter().any(|x| !x.is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    sub_row(a, t, i, &minus_one);
                    if let Some(u) = u.as_deref_mut() {
                        sub_row(u, t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            negate_row(a, t);
            if let Some(u) = u.as_deref_mut() {
                negate_row(u, t);
            }
        }
        t += 1;
    }
    t
}

fn move_pivot(
    a: &mut [Vec<BigInt>],
    t: usize,
    pi: usize,
    pj: usize,
    u: Option<&mut Vec<Vec<BigInt>>>,
    v: Option<&mut Vec<Vec<BigInt>>>,
) {
    if pi != t {
        a.swap(t, pi);
        if let Some(u) = u {
            u.swap(t, pi);
        }
    }
    if pj != t {
        swap_cols(a, t, pj);
        if let Some(v) = v {
            swap_cols(v, t, pj);
        }
    }
}
