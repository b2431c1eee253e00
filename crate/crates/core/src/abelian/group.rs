use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::Presentation;
use crate::exactla::{smith_diagonal, ExactMatrix};
use crate::{Error, Result};

/// Finitely generated abelian group `Z/d_1 + ... + Z/d_k + Z^r` in canonical
/// form: every `d_i >= 2` and `d_i | d_{i+1}`. Two groups are isomorphic
/// exactly when they are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbGroup {
    factors: Vec<BigInt>,
    rank: usize,
}

impl FgAbGroup {
    /// Checked constructor for data that is already canonical.
    pub fn new(factors: Vec<BigInt>, rank: usize) -> Result<Self> {
        let two = BigInt::from(2);
        if let Some(bad) = factors.iter().find(|d| **d < two) {
            return Err(Error::InvalidGroup(alloc::format!("invariant factor {bad} is below 2")));
        }
        if factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidGroup("invariant factors do not form a divisibility chain".into()));
        }
        Ok(FgAbGroup { factors, rank })
    }

    pub(crate) fn from_canonical(factors: Vec<BigInt>, rank: usize) -> Self {
        debug_assert!(Self::new(factors.clone(), rank).is_ok(), "not canonical: {factors:?}");
        FgAbGroup { factors, rank }
    }

    /// `Z/o_1 + ... + Z/o_k + Z^rank` for arbitrary orders; an order of zero
    /// contributes a free summand and units are dropped.
    pub fn from_cyclic_orders(orders: &[BigInt], rank: usize) -> Self {
        let n = orders.len();
        let diag = ExactMatrix::diagonal(n, n, &orders.iter().map(|o| o.abs()).collect::<Vec<_>>());
        let d = smith_diagonal(&diag);
        let extra_free = n - d.len();
        Self::from_canonical(d.into_iter().filter(|x| !x.is_one()).collect(), rank + extra_free)
    }

    pub fn trivial() -> Self {
        FgAbGroup { factors: Vec::new(), rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { factors: Vec::new(), rank }
    }

    /// `Z/n`; `n = 0` gives `Z`.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(&[n.into()], 0)
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.factors.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.factors.iter().product())
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Least `e > 0` with `e * x = 0` for all `x`, for finite groups.
    pub fn exponent(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.factors.last().cloned().unwrap_or_else(BigInt::one))
    }

    /// True when `n * x = 0` for every element.
    pub fn annihilated_by(&self, n: &BigInt) -> bool {
        self.is_finite() && self.factors.iter().all(|d| n.is_multiple_of(d))
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let orders: Vec<BigInt> = self.factors.iter().chain(&other.factors).cloned().collect();
        Self::from_cyclic_orders(&orders, self.rank + other.rank)
    }

    /// Number of generators of the canonical presentation.
    pub fn generator_count(&self) -> usize {
        self.factors.len() + self.rank
    }

    /// Canonical presentation: one generator per summand, torsion first.
    pub fn presentation(&self) -> Presentation {
        let n = self.generator_count();
        let t = self.factors.len();
        let mut entries = vec![Vec::new(); n];
        for (i, d) in self.factors.iter().enumerate() {
            entries[i].push((i, d.clone()));
        }
        Presentation::new(n, ExactMatrix::from_row_entries(n, t, entries)).expect("diagonal relations")
    }

    /// Compact text form, e.g. `Z/2 + Z/4 + Z^3`; the trivial group is `0`.
    pub fn to_compact(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in &self.factors {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        if self.rank > 0 {
            if !first {
                write!(f, " + ")?;
            }
            match self.rank {
                1 => write!(f, "Z")?,
                r => write!(f, "Z^{r}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[i64], rank: usize) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(&orders.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), rank)
    }

    #[test]
    fn canonicalization() {
        assert_eq!(g(&[2, 3], 0), g(&[6], 0));
        assert_eq!(g(&[4, 2], 1), FgAbGroup::new(vec![BigInt::from(2), BigInt::from(4)], 1).unwrap());
        assert_eq!(g(&[1, 0, 6], 0), g(&[6], 1));
        assert_eq!(g(&[6, 10, 15], 0).factors(), &[BigInt::from(30), BigInt::from(30)]);
    }

    #[test]
    fn rejects_non_canonical() {
        assert!(FgAbGroup::new(vec![BigInt::from(4), BigInt::from(2)], 0).is_err());
        assert!(FgAbGroup::new(vec![BigInt::from(1)], 0).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(g(&[2], 0).to_string(), "Z/2");
        assert_eq!(g(&[2, 4], 3).to_string(), "Z/2 + Z/4 + Z^3");
        assert_eq!(FgAbGroup::free(1).to_string(), "Z");
    }

    #[test]
    fn orders() {
        assert_eq!(g(&[2, 4], 0).order(), Some(BigInt::from(8)));
        assert_eq!(g(&[2], 1).order(), None);
        assert_eq!(g(&[2, 4], 0).exponent(), Some(BigInt::from(4)));
        assert!(g(&[2, 3], 0).annihilated_by(&BigInt::from(12)));
        assert!(!g(&[4], 0).annihilated_by(&BigInt::from(6)));
    }
}
