use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;
use crate::{Error, Result};

/// Row Hermite normal form of the lattice spanned by `gens` (each of length
/// `dim`): pivots move strictly right, are positive, and entries above a pivot
/// lie in `[0, pivot)`. Zero rows are dropped, so the result is the canonical
/// basis of the lattice.
pub fn hermite_rows(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    debug_assert!(rows.iter().all(|r| r.len() == dim));
    let mut top = 0;
    for col in 0..dim {
        loop {
            let pivot = (top..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pivot else { break };
            rows.swap(top, p);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(head[top].iter()) {
                    *x -= y * &q;
                }
                done &= tail[0][col].is_zero();
            }
            if done {
                break;
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            if rows[top][col].is_negative() {
                for x in rows[top].iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
            let (head, tail) = rows.split_at_mut(top);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                let q = row[col].div_floor(&pivot_row[col]);
                if !q.is_zero() {
                    for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                        *x -= y * &q;
                    }
                }
            }
            top += 1;
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    rows.truncate(top);
    rows
}

/// Row Hermite normal form of a matrix (the canonical basis of its row lattice).
pub fn hermite_form(m: &ExactMatrix) -> ExactMatrix {
    let rows = hermite_rows(&m.dense_rows(), m.cols());
    if rows.is_empty() {
        return ExactMatrix::zeros(0, m.cols());
    }
    ExactMatrix::from_rows(rows)
}

/// Inverse of a unimodular matrix. The Hermite form of `[U | I]` is `[I | U^-1]`.
pub fn inverse_unimodular(u: &ExactMatrix) -> Result<ExactMatrix> {
    let n = u.rows();
    if !u.is_square() {
        return Err(Error::Dimension(alloc::format!("{}x{} is not square", n, u.cols())));
    }
    if n == 0 {
        return Ok(ExactMatrix::zeros(0, 0));
    }
    let aug = u.hstack(&ExactMatrix::identity(n))?;
    let h = hermite_rows(&aug.dense_rows(), 2 * n);
    let unimodular = h.len() == n && (0..n).all(|i| h[i][i].is_one() && (0..n).all(|j| j == i || h[i][j].is_zero()));
    if !unimodular {
        return Err(Error::InvalidArgument("matrix is not unimodular".into()));
    }
    Ok(ExactMatrix::from_rows(h.into_iter().map(|r| r[n..].to_vec()).collect()))
}
