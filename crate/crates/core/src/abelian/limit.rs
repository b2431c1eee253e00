use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{AbHom, FgAbGroup};
use crate::exactla::{cokernel_structure, hermite_rows, kernel_basis, solve_integer, ExactMatrix};
use crate::{Error, Result};

/// Direct limit of `c -> c -> c -> ...` under an endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitOutcome {
    /// The images stabilized; the endomorphism restricts to an automorphism
    /// of the eventual image, which is the limit.
    FinitelyGenerated(FgAbGroup),
    /// The images of the free part never stabilize. `sublattice` (columns, in
    /// free coordinates) is a basis of the integer points of the eventual
    /// rational image and `acting` is the
    /// endomorphism on it; its determinant is not a unit, so the limit is
    /// infinitely generated (e.g. `Z[1/2]` for `Z` with `x2`).
    NonFinitelyGenerated { sublattice: ExactMatrix, acting: ExactMatrix },
}

impl LimitOutcome {
    pub fn group(&self) -> Option<&FgAbGroup> {
        match self {
            LimitOutcome::FinitelyGenerated(g) => Some(g),
            LimitOutcome::NonFinitelyGenerated { .. } => None,
        }
    }

    pub fn is_finitely_generated(&self) -> bool {
        matches!(self, LimitOutcome::FinitelyGenerated(_))
    }
}

fn columns(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    (0..m.cols()).map(|j| m.column_vector(j)).collect()
}

/// Matrix of `map` on the lattice with basis rows `basis`, which it must preserve.
fn restrict(map: &ExactMatrix, basis: &[Vec<BigInt>], dim: usize) -> ExactMatrix {
    let basis_cols = ExactMatrix::from_columns(dim, basis);
    let coords: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|b| {
            let image = map.mul_vec(b).expect("square map");
            solve_integer(&basis_cols, &image).expect("dimensions agree").expect("invariant lattice")
        })
        .collect();
    ExactMatrix::from_columns(basis.len(), &coords)
}

/// `span_Q(basis) ∩ Z^dim`, in Hermite form.
fn saturate(basis: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let orthogonal = kernel_basis(&ExactMatrix::from_rows(basis.to_vec()));
    if orthogonal.is_empty() {
        return hermite_rows(&columns(&ExactMatrix::identity(dim)), dim);
    }
    kernel_basis(&ExactMatrix::from_rows(orthogonal))
}

fn power(m: &ExactMatrix, k: usize) -> ExactMatrix {
    let mut acc = ExactMatrix::identity(m.rows());
    for _ in 0..k {
        acc = m.mul(&acc).expect("square");
    }
    acc
}

/// Direct limit of `c` under `phi`, which must be an endomorphism of the
/// canonical presentation of `c`.
///
/// The free part is decided first: after `r = rank(c)` steps the rational image
/// is stable, and the lattice images stabilize iff `phi` acts on the eventual
/// image lattice with determinant `+-1`. Then the images `phi^k(c)` are
/// iterated until two consecutive Hermite bases agree.
pub fn direct_limit_endo(c: &FgAbGroup, phi: &AbHom) -> Result<LimitOutcome> {
    let pres = c.presentation();
    if phi.source() != &pres || phi.target() != &pres {
        return Err(Error::InvalidHom("not an endomorphism of the canonical presentation".into()));
    }
    let t = c.factors().len();
    let n = c.generator_count();
    let r = c.rank();
    let m = phi.matrix();

    if r > 0 {
        let free_idx: Vec<usize> = (t..n).collect();
        let free_map = m.select_rows(&free_idx).select_cols(&free_idx);
        let image = saturate(&hermite_rows(&columns(&power(&free_map, r)), r), r);
        if !image.is_empty() {
            let acting = restrict(&free_map, &image, r);
            if !acting.determinant()?.abs().is_one() {
                return Ok(LimitOutcome::NonFinitelyGenerated {
                    sublattice: ExactMatrix::from_columns(r, &image),
                    acting,
                });
            }
        }
    }

    let relations: Vec<Vec<BigInt>> = columns(pres.relations());
    let mut lattice = hermite_rows(&columns(&ExactMatrix::identity(n)), n);
    let bits = c.factors().last().map_or(0, |d| d.bits() as usize);
    let cap = n.max(1) * (bits + 64);
    let mut stable = false;
    for _ in 0..cap {
        let mut gens: Vec<Vec<BigInt>> = lattice.iter().map(|b| m.mul_vec(b).expect("square")).collect();
        gens.extend(relations.iter().cloned());
        let next = hermite_rows(&gens, n);
        if next == lattice {
            stable = true;
            break;
        }
        lattice = next;
    }
    if !stable {
        // Unreachable once the free part is known to stabilize; kept as the
        // documented hard cap.
        return Ok(LimitOutcome::NonFinitelyGenerated {
            sublattice: ExactMatrix::from_columns(n, &lattice),
            acting: restrict(m, &lattice, n),
        });
    }
    if lattice.is_empty() {
        return Ok(LimitOutcome::FinitelyGenerated(FgAbGroup::trivial()));
    }
    let basis_cols = ExactMatrix::from_columns(n, &lattice);
    let coords: Vec<Vec<BigInt>> = relations
        .iter()
        .map(|rel| {
            solve_integer(&basis_cols, rel).expect("dimensions agree").expect("relations lie in every image lattice")
        })
        .collect();
    let group = cokernel_structure(&ExactMatrix::from_columns(lattice.len(), &coords));
    Ok(LimitOutcome::FinitelyGenerated(group))
}
