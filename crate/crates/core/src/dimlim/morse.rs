use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{fact_set_member, membership_in_limit, quotient_by_intertwiner, Intertwiner, StationaryLimit};
use crate::abelian::{torsion_part, FgAbGroup, LimitOutcome};
use crate::cochain::{group_cohomology, DEFAULT_CAP};
use crate::exactla::ExactMatrix;
use crate::groups::FiniteGroup;
use crate::Result;

fn vec2(a: i64, b: i64) -> Vec<BigInt> {
    vec![BigInt::from(a), BigInt::from(b)]
}

impl StationaryLimit {
    /// `K_0` of the Morse system: `A = [[0, 2], [1, 1]]`, unit `(2, 2)`.
    pub fn morse_x() -> Self {
        Self::new(ExactMatrix::from_rows(vec![vec![0, 2], vec![1, 1]]), vec2(2, 2)).expect("nonsingular")
    }

    /// `K_0` of the substitution `1 -> 10, 0 -> 11`: `B = [[1, 2], [1, 0]]`, unit `(2, 1)`.
    pub fn morse_z() -> Self {
        Self::new(ExactMatrix::from_rows(vec![vec![1, 2], vec![1, 0]]), vec2(2, 1)).expect("nonsingular")
    }

    /// `Z[1/2]` as `lim(Z, 2)` with unit 1.
    pub fn odometer() -> Self {
        Self::new(ExactMatrix::from_rows(vec![vec![2]]), vec![BigInt::from(1)]).expect("nonsingular")
    }
}

impl Intertwiner {
    /// `r* : K_0(Z) -> K_0(X)`, `R = [[2, -2], [0, 2]]`.
    pub fn morse_r() -> Self {
        let r = ExactMatrix::from_rows(vec![vec![2, -2], vec![0, 2]]);
        Self::new(StationaryLimit::morse_z(), StationaryLimit::morse_x(), r).expect("valid")
    }

    /// `q* : K_0(Y) -> K_0(Z)`, `u -> u (2, 1)`.
    pub fn morse_q() -> Self {
        Self::new(StationaryLimit::odometer(), StationaryLimit::morse_z(), ExactMatrix::column(&vec2(2, 1))).expect("valid")
    }

    /// `p* : K_0(Y) -> K_0(X)`, `u -> u (2, 2)`.
    pub fn morse_p() -> Self {
        Self::new(StationaryLimit::odometer(), StationaryLimit::morse_x(), ExactMatrix::column(&vec2(2, 2))).expect("valid")
    }
}

/// Summary of the checks on the Morse example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseReport {
    pub rb_equals_ar: bool,
    pub r_unit: bool,
    /// `K_0(X) / r* K_0(Z)`.
    pub quotient_xz: LimitOutcome,
    /// `K_0(Z) / q* K_0(Y)`.
    pub quotient_zy: LimitOutcome,
    /// `K_0(X) / p* K_0(Y)`.
    pub quotient_xy: LimitOutcome,
    /// `H^0(X|Z)`, the torsion of `quotient_xz`.
    pub h0_xz: Option<FgAbGroup>,
    /// `H^2(Z/2)`, which must equal `h0_xz`.
    pub h2_z2: FgAbGroup,
    /// `H^0(Z|Y)`.
    pub h0_zy: Option<FgAbGroup>,
    /// `H^0(X|Y)`.
    pub h0_xy: Option<FgAbGroup>,
    /// Sampled pairs on which the limit membership and the set description agree.
    pub membership_samples: usize,
    /// Identities that failed, empty when everything checks out.
    pub failures: Vec<String>,
}

impl MorseReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(x, y) = ((a + 2b)/3, (a - b)/3)`.
pub fn morse_coordinates(a: &BigRational, b: &BigInt) -> Vec<BigRational> {
    let b = BigRational::from_integer(b.clone());
    let three = BigRational::from_integer(BigInt::from(3));
    vec![(a + &b * BigRational::from_integer(BigInt::from(2))) / &three, (a - &b) / three]
}

pub fn morse_report() -> Result<MorseReport> {
    let r = Intertwiner::morse_r();
    let x = r.target();
    let z = r.source();
    let rb_equals_ar = r.matrix().mul(z.matrix())? == x.matrix().mul(r.matrix())?;
    let r_unit = r.matrix().mul_vec(z.unit())? == x.unit();

    let quotient_xz = quotient_by_intertwiner(&r)?;
    let quotient_zy = quotient_by_intertwiner(&Intertwiner::morse_q())?;
    let quotient_xy = quotient_by_intertwiner(&Intertwiner::morse_p())?;
    let torsion = |q: &LimitOutcome| q.group().map(torsion_part);
    let h0_xz = torsion(&quotient_xz);
    let h0_zy = torsion(&quotient_zy);
    let h0_xy = torsion(&quotient_xy);
    let h2_z2 = group_cohomology(&FiniteGroup::cyclic(2), 2, DEFAULT_CAP)?;

    let mut failures = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(String::from(what));
        }
    };
    check(rb_equals_ar, "R B = A R");
    check(r_unit, "R e_Z = e_X");
    check(quotient_xz.group() == Some(&FgAbGroup::cyclic(2)), "K0(X)/r*K0(Z) = Z/2");
    check(quotient_zy.group() == Some(&FgAbGroup::free(1)), "K0(Z)/q*K0(Y) = Z");
    check(quotient_xy.group() == Some(&FgAbGroup::free(1)), "K0(X)/p*K0(Y) = Z");
    check(h0_xz.as_ref() == Some(&h2_z2), "H0(X|Z) = H2(Z/2)");
    check(h0_zy.as_ref().is_some_and(|g| g.is_trivial()), "H0(Z|Y) = 0");
    check(h0_xy.as_ref().is_some_and(|g| g.is_trivial()), "H0(X|Y) = 0");

    let mut samples = 0;
    let mut agree = true;
    for k in -12i64..=12 {
        for shift in 0..4u32 {
            let a = BigRational::new(BigInt::from(k), BigInt::from(1u32 << shift));
            for b in -3i64..=3 {
                let b = BigInt::from(b);
                let v = morse_coordinates(&a, &b);
                agree &= membership_in_limit(x, &v)? == fact_set_member(&a, &b);
                samples += 1;
            }
        }
    }
    check(agree, "membership in lim(Z^2, A) matches the set description");

    Ok(MorseReport {
        rb_equals_ar,
        r_unit,
        quotient_xz,
        quotient_zy,
        quotient_xy,
        h0_xz,
        h2_z2,
        h0_zy,
        h0_xy,
        membership_samples: samples,
        failures,
    })
}

/// Prefix of length `2^m` of the Morse fixed point `0 -> 01, 1 -> 10`, its
/// code `z_i = x_i + x_{i+1} (mod 2)`, and the check of
/// `h(Tx) - h(x) = g(r(x)) - 2 * 1_[10](x)` at every interior position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseWindow {
    pub x: Vec<u8>,
    pub z: Vec<u8>,
    pub cocycle_holds: Vec<bool>,
}

impl MorseWindow {
    pub fn cocycle_ok(&self) -> bool {
        self.cocycle_holds.iter().all(|&b| b)
    }
}

pub fn morse_window(m: usize) -> MorseWindow {
    let mut x = vec![0u8];
    for _ in 0..m {
        x = x.iter().flat_map(|&s| [s, 1 - s]).collect();
    }
    let z: Vec<u8> = x.windows(2).map(|w| w[0] ^ w[1]).collect();
    let cocycle_holds = x
        .windows(2)
        .zip(&z)
        .map(|(w, &zi)| {
            let ten = i32::from(w[0] == 1 && w[1] == 0);
            i32::from(w[1]) - i32::from(w[0]) == i32::from(zi) - 2 * ten
        })
        .collect();
    MorseWindow { x, z, cocycle_holds }
}
