//! Exact integer linear algebra.
//!
//! Every routine here is a pure function of its arguments; matrices are
//! immutable values. Empty matrices (no rows or no columns) are legal
//! everywhere and give the expected empty or free answers.

mod hermite;
mod matrix;
pub mod modp;
mod smith;
mod sparse;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use hermite::{hermite_form, hermite_rows, inverse_unimodular};
pub use matrix::{ExactMatrix, RowNonzeros};
pub use smith::{smith_diagonal, snf, SmithForm};

use crate::abelian::FgAbGroup;
use crate::{Error, Result};

/// Rank over the rationals.
pub fn rank(m: &ExactMatrix) -> usize {
    smith_diagonal(m).len()
}

/// Lattice basis of `{v : m v = 0}`, in Hermite normal form.
///
/// The basis is saturated: every integer kernel vector is an integer
/// combination of it.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    let s = snf(m);
    let r = s.rank();
    let gens: Vec<Vec<BigInt>> = (r..m.cols()).map(|j| s.v.column_vector(j)).collect();
    hermite_rows(&gens, m.cols())
}

/// Structure of `Z^rows / image(m)`.
pub fn cokernel_structure(m: &ExactMatrix) -> FgAbGroup {
    let diag = smith_diagonal(m);
    let free = m.rows() - diag.len();
    let factors = diag.into_iter().filter(|d| !d.is_one()).collect();
    FgAbGroup::from_canonical(factors, free)
}

/// Cokernel together with coordinates for its canonical generators.
#[derive(Clone, Debug)]
pub struct CokernelCoordinates {
    pub group: FgAbGroup,
    /// `Z^rows -> Z^gens`: sends a vector to the coordinates of its class.
    pub projection: ExactMatrix,
    /// `Z^gens -> Z^rows`: a representative for each canonical generator.
    pub lift: ExactMatrix,
}

/// Cokernel of `m` with explicit coordinate maps for its canonical generators
/// (torsion generators in divisibility order, then free generators).
pub fn cokernel_coordinates(m: &ExactMatrix) -> Result<CokernelCoordinates> {
    let s = snf(m);
    let diag = s.diagonal();
    let rank = s.rank();
    let mut selected = Vec::new();
    let mut factors = Vec::new();
    for (i, d) in diag.iter().enumerate().take(rank) {
        if !d.is_one() {
            selected.push(i);
            factors.push(d.clone());
        }
    }
    selected.extend(rank..m.rows());
    let u_inv = inverse_unimodular(&s.u)?;
    Ok(CokernelCoordinates {
        group: FgAbGroup::from_canonical(factors, m.rows() - rank),
        projection: s.u.select_rows(&selected),
        lift: u_inv.select_cols(&selected),
    })
}

/// An integer solution of `m x = b`, if one exists.
pub fn solve_integer(m: &ExactMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(alloc::format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    // u m v = d, so m x = b iff d (v^-1 x) = u b.
    let s = snf(m);
    let ub = s.u.mul_vec(b)?;
    let diag = s.diagonal();
    let rank = s.rank();
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < rank {
            let (q, r) = c.div_rem(&diag[i]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !c.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(s.v.mul_vec(&y)?))
}
