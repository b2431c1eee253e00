//! Exact sparse elimination for the Smith diagonal of large, very sparse
//! integer matrices (the cochain differentials).
//!
//! Unit pivots are eliminated first with a Markowitz-style choice; each one
//! splits off an invariant factor 1 together with its row and column. The
//! remainder is brought to row echelon form with gcd row operations, and the
//! at most `cols` surviving rows go through the dense Smith reduction.
//!
//! Entries are kept in `i64` with checked arithmetic; on overflow the whole
//! computation restarts over `BigInt`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use super::matrix::ExactMatrix;
use super::smith::dense_diagonal;

pub(crate) trait Entry:
    Clone + Integer + Signed + CheckedMul + CheckedSub + Into<BigInt>
{
    fn checked_div_floor(&self, other: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn checked_div_floor(&self, other: &Self) -> Option<Self> {
        self.checked_div_euclid(*other).map(|_| self.div_floor(other))
    }
}

impl Entry for BigInt {
    fn checked_div_floor(&self, other: &Self) -> Option<Self> {
        Some(self.div_floor(other))
    }
}

#[derive(Debug)]
struct Overflow;

type Row<T> = Vec<(usize, T)>;

/// `dst - q * src` for sorted sparse rows.
fn axpy<T: Entry>(dst: &Row<T>, src: &Row<T>, q: &T, fill: &mut Vec<usize>) -> Result<Row<T>, Overflow> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else {
            let prod = src[j].1.checked_mul(q).ok_or(Overflow)?;
            if take_src {
                fill.push(src[j].0);
                out.push((src[j].0, T::zero().checked_sub(&prod).ok_or(Overflow)?));
                j += 1;
            } else {
                let v = dst[i].1.checked_sub(&prod).ok_or(Overflow)?;
                if !v.is_zero() {
                    out.push((dst[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ok(out)
}

fn entry_at<T>(row: &Row<T>, c: usize) -> Option<&T> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|k| &row[k].1)
}

struct Engine<T> {
    cols: usize,
    rows: Vec<Row<T>>,
    active: Vec<bool>,
    col_rows: Vec<Vec<usize>>,
    col_alive: Vec<bool>,
}

impl<T: Entry> Engine<T> {
    fn new(cols: usize, rows: Vec<Row<T>>) -> Self {
        let mut col_rows = vec![Vec::new(); cols];
        for (i, row) in rows.iter().enumerate() {
            for (c, _) in row {
                col_rows[*c].push(i);
            }
        }
        let active = rows.iter().map(|r| !r.is_empty()).collect();
        Engine { cols, rows, active, col_rows, col_alive: vec![true; cols] }
    }

    /// Active rows with a nonzero entry in column `c`; refreshes the index.
    fn rows_in_col(&mut self, c: usize) -> Vec<usize> {
        let mut list = core::mem::take(&mut self.col_rows[c]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&r| self.active[r] && entry_at(&self.rows[r], c).is_some());
        self.col_rows[c] = list.clone();
        list
    }

    /// `row[dst] -= q * row[src]`, keeping the column index current.
    fn row_op(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        let mut fill = Vec::new();
        let new = axpy(&self.rows[dst], &self.rows[src], q, &mut fill)?;
        self.rows[dst] = new;
        for c in fill {
            self.col_rows[c].push(dst);
        }
        Ok(())
    }

    /// Clears column `c` outside row `p` using the unit pivot there, then
    /// retires both.
    fn unit_pivot(&mut self, p: usize, c: usize) -> Result<(), Overflow> {
        let u = entry_at(&self.rows[p], c).expect("pivot present").clone();
        for r in self.rows_in_col(c) {
            if r == p {
                continue;
            }
            let a = entry_at(&self.rows[r], c).expect("listed").clone();
            let q = a.checked_mul(&u).ok_or(Overflow)?;
            self.row_op(r, p, &q)?;
            if self.rows[r].is_empty() {
                self.active[r] = false;
            }
        }
        self.active[p] = false;
        self.col_alive[c] = false;
        self.col_rows[c].clear();
        Ok(())
    }

    /// Eliminates unit pivots until none is left; returns their number.
    fn eliminate_units(&mut self) -> Result<usize, Overflow> {
        let mut count = 0;
        loop {
            let mut order: Vec<usize> = (0..self.rows.len()).filter(|&r| self.active[r]).collect();
            order.sort_by_key(|&r| (self.rows[r].len(), r));
            let mut progress = false;
            for r in order {
                if !self.active[r] {
                    continue;
                }
                let best = self.rows[r]
                    .iter()
                    .filter(|(_, v)| v.abs().is_one())
                    .min_by_key(|(c, _)| (self.col_rows[*c].len(), *c))
                    .map(|e| e.0);
                if let Some(c) = best {
                    self.unit_pivot(r, c)?;
                    count += 1;
                    progress = true;
                }
            }
            if !progress {
                return Ok(count);
            }
        }
    }

    /// Row echelon form of what is left, by gcd row operations; returns the
    /// echelon rows restricted to the surviving columns.
    fn echelon_remainder(&mut self) -> Result<(Vec<Row<T>>, Vec<usize>), Overflow> {
        let alive: Vec<usize> = (0..self.cols).filter(|&c| self.col_alive[c]).collect();
        let mut echelon = Vec::new();
        for &c in &alive {
            loop {
                let rows = self.rows_in_col(c);
                let Some(&p) = rows.iter().min_by_key(|&&r| {
                    (entry_at(&self.rows[r], c).expect("listed").abs(), self.rows[r].len())
                }) else {
                    break;
                };
                if rows.len() == 1 {
                    self.active[p] = false;
                    echelon.push(core::mem::take(&mut self.rows[p]));
                    break;
                }
                let pv = entry_at(&self.rows[p], c).expect("listed").clone();
                for r in rows {
                    if r == p {
                        continue;
                    }
                    let a = entry_at(&self.rows[r], c).expect("listed").clone();
                    let q = a.checked_div_floor(&pv).ok_or(Overflow)?;
                    self.row_op(r, p, &q)?;
                    if self.rows[r].is_empty() {
                        self.active[r] = false;
                    }
                }
            }
        }
        Ok((echelon, alive))
    }
}

fn run<T: Entry>(cols: usize, rows: Vec<Row<T>>) -> Result<Vec<BigInt>, Overflow> {
    let mut engine = Engine::new(cols, rows);
    let units = engine.eliminate_units()?;
    let (echelon, alive) = engine.echelon_remainder()?;
    let mut position = vec![usize::MAX; cols];
    for (k, &c) in alive.iter().enumerate() {
        position[c] = k;
    }
    let mut dense: Vec<Vec<BigInt>> = echelon
        .into_iter()
        .map(|row| {
            let mut d = vec![BigInt::zero(); alive.len()];
            for (c, v) in row {
                d[position[c]] = v.into();
            }
            d
        })
        .collect();
    let mut diag = vec![BigInt::one(); units];
    diag.extend(dense_diagonal(&mut dense, alive.len()));
    Ok(diag)
}

pub(crate) fn smith_diagonal_sparse(m: &ExactMatrix) -> Vec<BigInt> {
    let small: Option<Vec<Row<i64>>> = (0..m.rows())
        .map(|i| m.row_nonzeros(i).map(|(c, v)| v.to_i64().map(|x| (c, x))).collect())
        .collect();
    if let Some(rows) = small {
        if let Ok(diag) = run(m.cols(), rows) {
            return diag;
        }
    }
    run::<BigInt>(m.cols(), m.sparse_rows()).expect("BigInt arithmetic cannot overflow")
}
