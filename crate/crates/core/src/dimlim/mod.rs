//! Stationary dimension groups `lim(Z^d, A)` with a distinguished unit, their
//! quotients by intertwined subgroups, and the Morse example.
//!
//! An element is a pair `(level, v)` with `(n, v) ~ (n + 1, A v)`. Since `A` is
//! nonsingular the limit embeds in `Q^d` as the union of `A^-n Z^d`.

mod morse;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::abelian::{direct_limit_endo, AbHom, FgAbGroup, LimitOutcome};
use crate::exactla::{cokernel_coordinates, ExactMatrix};
use crate::{Error, Result};

pub use morse::{morse_coordinates, morse_report, morse_window, MorseReport, MorseWindow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationaryLimit {
    a: ExactMatrix,
    unit: Vec<BigInt>,
}

/// An element `(level, v)` of a stationary limit.
pub type LimitElement = (usize, Vec<BigInt>);

impl StationaryLimit {
    /// Requires a square nonsingular `a` and a unit of matching length.
    pub fn new(a: ExactMatrix, unit: Vec<BigInt>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension(alloc::format!("stationary matrix is {}x{}", a.rows(), a.cols())));
        }
        if unit.len() != a.rows() {
            return Err(Error::Dimension(alloc::format!("unit of length {} for dimension {}", unit.len(), a.rows())));
        }
        if a.determinant()?.is_zero() {
            return Err(Error::InvalidArgument("stationary matrix is singular".into()));
        }
        Ok(StationaryLimit { a, unit })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.a
    }

    pub fn unit(&self) -> &[BigInt] {
        &self.unit
    }

    pub fn dimension(&self) -> usize {
        self.unit.len()
    }

    fn check_len(&self, v: usize) -> Result<()> {
        if v != self.dimension() {
            return Err(Error::Dimension(alloc::format!("vector of length {v} for dimension {}", self.dimension())));
        }
        Ok(())
    }

    /// `A^k v`.
    pub fn raise(&self, v: &[BigInt], k: usize) -> Result<Vec<BigInt>> {
        self.check_len(v.len())?;
        let mut out = v.to_vec();
        for _ in 0..k {
            out = self.a.mul_vec(&out)?;
        }
        Ok(out)
    }

    /// Image of an element in `Q^d`, namely `A^-level v`.
    pub fn embed(&self, x: &LimitElement) -> Result<Vec<BigRational>> {
        self.check_len(x.1.len())?;
        let mut v: Vec<BigRational> = x.1.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        if x.0 == 0 {
            return Ok(v);
        }
        let d = self.dimension();
        let rows = self.a.dense_rows();
        for _ in 0..x.0 {
            v = solve_rational(&rows, &v, d);
        }
        Ok(v)
    }
}

/// Solves `a x = b` over the rationals for nonsingular `a` by Gaussian elimination.
fn solve_rational(a: &[Vec<BigInt>], b: &[BigRational], d: usize) -> Vec<BigRational> {
    let mut m: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigRational> = a[i].iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| !m[r][c].is_zero()).expect("nonsingular");
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = &*x / &pivot;
        }
        for r in 0..d {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=d {
                    let delta = &f * &m[c][k];
                    m[r][k] -= delta;
                }
            }
        }
    }
    m.into_iter().map(|mut row| row.pop().expect("augmented")).collect()
}

/// Equality in the limit: both sides raised to a common level.
pub fn element_equal(lim: &StationaryLimit, x: &LimitElement, y: &LimitElement) -> Result<bool> {
    let level = x.0.max(y.0);
    Ok(lim.raise(&x.1, level - x.0)? == lim.raise(&y.1, level - y.0)?)
}

/// Decides whether `A^n v` is integral for some `n >= 0`.
///
/// The state is the common denominator `D` with the numerator `w` reduced
/// mod `D`, kept in lowest terms. The state space is finite, so the orbit
/// either reaches denominator 1 or enters a cycle, which Brent's method
/// detects.
pub fn membership_in_limit(lim: &StationaryLimit, v: &[BigRational]) -> Result<bool> {
    lim.check_len(v.len())?;
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let num: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let normalize = |(den, num): (BigInt, Vec<BigInt>)| -> (BigInt, Vec<BigInt>) {
        let g = num.iter().fold(den.clone(), |acc, x| acc.gcd(x));
        let den = &den / &g;
        let num = num.iter().map(|x| (x / &g).mod_floor(&den)).collect();
        (den, num)
    };
    let step = |s: &(BigInt, Vec<BigInt>)| -> (BigInt, Vec<BigInt>) {
        let image = lim.a.mul_vec(&s.1).expect("square");
        normalize((s.0.clone(), image))
    };
    let mut tortoise = normalize((den, num));
    if tortoise.0.is_one() {
        return Ok(true);
    }
    let mut hare = step(&tortoise);
    let (mut power, mut lambda) = (1usize, 1usize);
    while hare != tortoise {
        if hare.0.is_one() {
            return Ok(true);
        }
        if power == lambda {
            tortoise = hare.clone();
            power *= 2;
            lambda = 0;
        }
        hare = step(&hare);
        lambda += 1;
    }
    Ok(hare.0.is_one())
}

/// Morse membership condition: `2^n a` is an integer with
/// `2^n a = (-1)^n b (mod 3)` for some `n`.
///
/// Multiplying by 4 preserves the congruence, so only the two smallest
/// admissible `n` need testing.
pub fn fact_set_member(a: &BigRational, b: &BigInt) -> bool {
    let den = a.denom();
    let n0 = den.trailing_zeros().unwrap_or(0) as usize;
    if den >> n0 != BigInt::one() {
        return false;
    }
    (n0..n0 + 2).any(|n| {
        let value = (a * BigRational::from_integer(BigInt::one() << n)).to_integer();
        let sign = if n % 2 == 0 { b.clone() } else { -b };
        (value - sign).mod_floor(&BigInt::from(3)).is_zero()
    })
}

/// A map `R` from `lim(Z^e, B)` to `lim(Z^d, A)` with `R B = A R` and
/// `R e_source = e_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    source: StationaryLimit,
    target: StationaryLimit,
    r: ExactMatrix,
}

impl Intertwiner {
    pub fn new(source: StationaryLimit, target: StationaryLimit, r: ExactMatrix) -> Result<Self> {
        if r.rows() != target.dimension() || r.cols() != source.dimension() {
            return Err(Error::Dimension(alloc::format!(
                "intertwiner is {}x{}, expected {}x{}",
                r.rows(),
                r.cols(),
                target.dimension(),
                source.dimension()
            )));
        }
        if r.mul(&source.a)? != target.a.mul(&r)? {
            return Err(Error::Intertwiner("R B != A R".into()));
        }
        if r.mul_vec(&source.unit)? != target.unit {
            return Err(Error::Intertwiner("R e_source != e_target".into()));
        }
        Ok(Intertwiner { source, target, r })
    }

    pub fn source(&self) -> &StationaryLimit {
        &self.source
    }

    pub fn target(&self) -> &StationaryLimit {
        &self.target
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.r
    }
}

/// `lim(Z^d, A) / R lim(Z^e, B)`, computed as the direct limit of `coker R`
/// under the map induced by `A`.
pub fn quotient_by_intertwiner(t: &Intertwiner) -> Result<LimitOutcome> {
    let coords = cokernel_coordinates(&t.r)?;
    let induced = coords.projection.mul(&t.target.a)?.mul(&coords.lift)?;
    let phi = AbHom::between(&coords.group, &coords.group, induced)?;
    direct_limit_endo(&coords.group, &phi)
}

/// Rational eigenvalue group: the torsion of `lim / Z e`.
///
/// This requires `A e = c e`. Writing `e = g e'` with `e'` primitive, the
/// elements of the limit on the line `Q e` are `(1/g) Z[1/c] e`, so the group
/// is `(1/g) Z[1/c] / Z`. For `|c| = 1` that is `Z/g`; otherwise it is not
/// finitely generated and the witness is the line `e` with `acting = [c]`.
/// See [`rational_eigenvalue_level`] for the finite stages.
pub fn rational_eigenvalue_group(lim: &StationaryLimit) -> Result<LimitOutcome> {
    let (c, g) = unit_eigenvalue(lim)?;
    if c.abs().is_one() {
        return Ok(LimitOutcome::FinitelyGenerated(FgAbGroup::cyclic(g)));
    }
    Ok(LimitOutcome::NonFinitelyGenerated {
        sublattice: ExactMatrix::column(&lim.unit),
        acting: ExactMatrix::from_rows(alloc::vec![alloc::vec![c]]),
    })
}

/// Stage `k` of the rational eigenvalue group: the elements of level at most
/// `k` on the line `Q e`, modulo `Z e`, which is `Z/(g |c|^k)`.
pub fn rational_eigenvalue_level(lim: &StationaryLimit, k: usize) -> Result<FgAbGroup> {
    let (c, g) = unit_eigenvalue(lim)?;
    Ok(FgAbGroup::cyclic(g * num_traits::pow(c.abs(), k)))
}

/// `(c, g)` with `A e = c e` and `g` the content of `e`.
fn unit_eigenvalue(lim: &StationaryLimit) -> Result<(BigInt, BigInt)> {
    let e = &lim.unit;
    let g = e.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::InvalidArgument("unit is zero".into()));
    }
    let ae = lim.a.mul_vec(e)?;
    let i = e.iter().position(|x| !x.is_zero()).expect("nonzero unit");
    let (c, rem) = ae[i].div_rem(&e[i]);
    if !rem.is_zero() || ae.iter().zip(e).any(|(y, x)| *y != &c * x) {
        return Err(Error::UnitNotEigenvector);
    }
    Ok((c, g))
}
