//! Rank modulo a prime by sparse elimination with Markowitz-style pivoting.
//!
//! Any prime gives a lower bound for the rank over the rationals. Callers
//! pair it with an exact upper bound to certify the rational rank without
//! running integer elimination on the largest matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::matrix::ExactMatrix;

/// Largest prime below 2^32.
pub const DEFAULT_PRIME: u32 = 4_294_967_291;

type Row = Vec<(u32, u32)>;

fn reduce_entry(v: &BigInt, p: u32) -> u32 {
    v.mod_floor(&BigInt::from(p)).to_u32().expect("reduced below p")
}

fn inverse(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// `dst - f * src (mod p)`.
fn axpy(dst: &Row, src: &Row, f: u32, p: u32, fill: &mut Vec<u32>) -> Row {
    let p64 = p as u64;
    let neg = (p64 - f as u64) % p64;
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i]);
            i += 1;
        } else if i >= dst.len() || src[j].0 < dst[i].0 {
            fill.push(src[j].0);
            out.push((src[j].0, (neg * src[j].1 as u64 % p64) as u32));
            j += 1;
        } else {
            let v = ((dst[i].1 as u64 + neg * src[j].1 as u64) % p64) as u32;
            if v != 0 {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry_at(row: &Row, c: u32) -> Option<u32> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|k| row[k].1)
}

/// Rank of `m` over `Z/p`. Elimination stops early once `stop_at` pivots
/// have been found.
pub fn rank_mod_p(m: &ExactMatrix, p: u32, stop_at: Option<usize>) -> usize {
    let cols = m.cols();
    let mut rows: Vec<Row> = (0..m.rows())
        .map(|i| {
            m.row_nonzeros(i)
                .filter_map(|(c, v)| {
                    let r = reduce_entry(v, p);
                    (r != 0).then_some((c as u32, r))
                })
                .collect()
        })
        .collect();
    let mut active: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); cols];
    for (i, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(i as u32);
        }
    }
    let limit = stop_at.unwrap_or(usize::MAX).min(cols).min(m.rows());
    let mut rank = 0;
    let mut fill = Vec::new();
    while rank < limit {
        let mut order: Vec<usize> = (0..rows.len()).filter(|&r| active[r]).collect();
        if order.is_empty() {
            break;
        }
        order.sort_by_key(|&r| (rows[r].len(), r));
        for r in order {
            if !active[r] || rank >= limit {
                continue;
            }
            let Some(&(c, pv)) = rows[r].iter().min_by_key(|(c, _)| (col_rows[*c as usize].len(), *c)) else {
                active[r] = false;
                continue;
            };
            let inv = inverse(pv, p);
            let mut list = core::mem::take(&mut col_rows[c as usize]);
            list.sort_unstable();
            list.dedup();
            for &t in &list {
                let t = t as usize;
                if t == r || !active[t] {
                    continue;
                }
                let Some(a) = entry_at(&rows[t], c) else { continue };
                let f = (a as u64 * inv as u64 % p as u64) as u32;
                fill.clear();
                let new = axpy(&rows[t], &rows[r], f, p, &mut fill);
                rows[t] = new;
                for &fc in &fill {
                    col_rows[fc as usize].push(t as u32);
                }
                if rows[t].is_empty() {
                    active[t] = false;
                }
            }
            active[r] = false;
            rows[r] = Vec::new();
            rank += 1;
        }
    }
    rank
}
