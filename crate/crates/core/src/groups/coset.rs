use alloc::vec;
use alloc::vec::Vec;

use super::FiniteGroup;
use crate::{Error, Result};

/// Default bound on the number of tuples enumerated by [`CosetSpace::diagonal_orbits`].
pub const DEFAULT_TUPLE_CAP: u128 = 5_000_000;

/// Left cosets `gH` with the left action of `G`. Point `0` is `H`, and points
/// are ordered by the smallest element index in each coset.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    group: FiniteGroup,
    subgroup: Vec<u32>,
    reps: Vec<u32>,
    coset_of: Vec<u32>,
    action: Vec<u32>,
    to_base: Vec<Vec<u32>>,
}

/// Orbits of `G` on `K^n`. Tuples are encoded as base-`|K|` integers with the
/// first coordinate most significant, so code order is lexicographic order.
#[derive(Clone, Debug)]
pub struct DiagonalOrbits {
    pub n: usize,
    pub points: usize,
    /// Each orbit as its sorted codes; orbits are ordered by smallest code.
    pub orbits: Vec<Vec<u64>>,
    /// Orbit index of every code.
    pub orbit_of: Vec<u32>,
}

impl DiagonalOrbits {
    pub fn decode(&self, code: u64) -> Vec<u32> {
        decode(code, self.n, self.points)
    }
}

pub(crate) fn decode(mut code: u64, n: usize, points: usize) -> Vec<u32> {
    let mut t = vec![0u32; n];
    for slot in t.iter_mut().rev() {
        *slot = (code % points as u64) as u32;
        code /= points as u64;
    }
    t
}

pub(crate) fn encode(t: &[u32], points: usize) -> u64 {
    t.iter().fold(0u64, |acc, &x| acc * points as u64 + x as u64)
}

impl CosetSpace {
    /// Checks that `subgroup` is closed under multiplication.
    pub fn new(group: FiniteGroup, subgroup: &[u32]) -> Result<Self> {
        let n = group.order();
        let mut member = vec![false; n];
        for &h in subgroup {
            if h as usize >= n {
                return Err(Error::InvalidGroup(alloc::format!("subgroup element {h} out of range")));
            }
            member[h as usize] = true;
        }
        if !member[0] {
            return Err(Error::InvalidGroup("subgroup does not contain the identity".into()));
        }
        let sub: Vec<u32> = (0..n as u32).filter(|&x| member[x as usize]).collect();
        for &a in &sub {
            for &b in &sub {
                if !member[group.mul(a, b) as usize] {
                    return Err(Error::InvalidGroup("subgroup is not closed under multiplication".into()));
                }
            }
        }
        Ok(Self::build(group, sub))
    }

    /// Coset space of the subgroup generated by `gens`.
    pub fn generated(group: FiniteGroup, gens: &[u32]) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g as usize >= group.order()) {
            return Err(Error::InvalidGroup(alloc::format!("subgroup generator {g} out of range")));
        }
        let sub = group.closure(gens);
        Ok(Self::build(group, sub))
    }

    fn build(group: FiniteGroup, subgroup: Vec<u32>) -> Self {
        let n = group.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n as u32 {
            if coset_of[x as usize] == u32::MAX {
                for &h in &subgroup {
                    coset_of[group.mul(x, h) as usize] = reps.len() as u32;
                }
                reps.push(x);
            }
        }
        let k = reps.len();
        let mut action = Vec::with_capacity(n * k);
        for g in 0..n as u32 {
            for &r in &reps {
                action.push(coset_of[group.mul(g, r) as usize]);
            }
        }
        let mut to_base = vec![Vec::new(); k];
        for g in 0..n as u32 {
            for u in 0..k {
                if action[g as usize * k + u] == 0 {
                    to_base[u].push(g);
                }
            }
        }
        CosetSpace { group, subgroup, reps, coset_of, action, to_base }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &[u32] {
        &self.subgroup
    }

    pub fn points(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[u32] {
        &self.reps
    }

    pub fn coset_of(&self, g: u32) -> u32 {
        self.coset_of[g as usize]
    }

    #[inline]
    pub fn act(&self, g: u32, u: u32) -> u32 {
        self.action[g as usize * self.reps.len() + u as usize]
    }

    /// Elements `g` with `g . u = 0`; each list has `|H|` entries.
    pub fn to_base(&self, u: u32) -> &[u32] {
        &self.to_base[u as usize]
    }

    pub fn fixed_points(&self, g: u32) -> usize {
        (0..self.points() as u32).filter(|&u| self.act(g, u) == u).count()
    }

    /// Orbits of the diagonal action on `K^n`, refused when `|K|^n > cap`.
    pub fn diagonal_orbits(&self, n: usize, cap: u128) -> Result<DiagonalOrbits> {
        let k = self.points();
        let total = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if total > cap || total > u32::MAX as u128 {
            return Err(Error::refused("tuple_cap_exceeded", total, cap));
        }
        let total = total as usize;
        let mut orbit_of = vec![u32::MAX; total];
        let mut orbits = Vec::new();
        let mut image = vec![0u32; n];
        for code in 0..total as u64 {
            if orbit_of[code as usize] != u32::MAX {
                continue;
            }
            let t = decode(code, n, k);
            let id = orbits.len() as u32;
            let mut members = Vec::new();
            for g in 0..self.group.order() as u32 {
                for (slot, &x) in image.iter_mut().zip(&t) {
                    *slot = self.act(g, x);
                }
                let c = encode(&image, k);
                if orbit_of[c as usize] == u32::MAX {
                    orbit_of[c as usize] = id;
                    members.push(c);
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        Ok(DiagonalOrbits { n, points: k, orbits, orbit_of })
    }
}
