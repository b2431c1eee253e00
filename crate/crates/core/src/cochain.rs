//! The invariant cochain complex `0 -> I(K) -> I(K^2) -> I(K^3) -> ...` over a
//! coset space `K = G/H`, where `I(K^m)` is the free abelian group on the
//! diagonal `G`-orbits of `K^m`.
//!
//! Conventions: `d_m : I(K^m) -> I(K^{m+1})` and `homology_at(m)` is
//! `ker d_m / im d_{m-1}`. With these, `H^n(G)` is `homology_at(n + 1)` over
//! `K = G`, and the relative group `H^n(X|Y)` of an isometric extension with
//! fiber `G/H` is `homology_at(n + 3)` over `K = G/H`.
//!
//! The relative computation assumes the extension has full Mackey group; this
//! is not checked.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::abelian::FgAbGroup;
use crate::exactla::modp::{rank_mod_p, DEFAULT_PRIME};
use crate::exactla::{self, smith_diagonal, ExactMatrix};
use crate::groups::{decode, encode, CosetSpace, FiniteGroup};
use crate::{Error, Result};

/// Default bound on `|K|^(m-1)`, the number of tuples with first coordinate
/// fixed at the largest level `m`.
pub const DEFAULT_CAP: u128 = 5_000_000;

/// Orbit bases for levels `1..=max_level + 1` and the differentials
/// `d_1..=d_max_level`.
#[derive(Clone, Debug)]
pub struct InvariantChain {
    space: CosetSpace,
    max_level: usize,
    bases: Vec<Vec<u64>>,
    differentials: Vec<ExactMatrix>,
}

/// Lexicographically smallest tuple in the orbit of `t`, as a code.
fn canonical_code(k: &CosetSpace, t: &[u32], scratch: &mut Vec<u32>) -> u64 {
    let mut best = u64::MAX;
    for &g in k.to_base(t[0]) {
        scratch.clear();
        scratch.extend(t.iter().map(|&x| k.act(g, x)));
        best = best.min(encode(scratch, k.points()));
    }
    best
}

/// Canonical representatives of the orbits on `K^m`, in increasing order.
///
/// Every orbit meets `{0} x K^(m-1)`, and the smallest member starts with `0`.
/// A prefix is pruned as soon as some `h` in `H` maps it below itself.
fn canonical_representatives(k: &CosetSpace, m: usize) -> Vec<u64> {
    let points = k.points() as u32;
    let h: Vec<u32> = k.subgroup().to_vec();
    let mut out = Vec::new();
    let mut tuple = vec![0u32; m];
    // tied[d] lists the h fixing the prefix of length d + 1
    let mut tied: Vec<Vec<u32>> = vec![Vec::new(); m];
    tied[0] = h.iter().copied().filter(|&g| g != 0).collect();
    fn dfs(k: &CosetSpace, points: u32, depth: usize, tuple: &mut Vec<u32>, tied: &mut Vec<Vec<u32>>, out: &mut Vec<u64>) {
        if depth == tuple.len() {
            out.push(encode(tuple, points as usize));
            return;
        }
        'next: for x in 0..points {
            tuple[depth] = x;
            let mut still = Vec::new();
            for &g in &tied[depth - 1] {
                let y = k.act(g, x);
                if y < x {
                    continue 'next;
                }
                if y == x {
                    still.push(g);
                }
            }
            tied[depth] = still;
            dfs(k, points, depth + 1, tuple, tied, out);
        }
    }
    if m == 1 {
        return vec![0];
    }
    dfs(k, points, 1, &mut tuple, &mut tied, &mut out);
    out
}

fn normalized_tuples(k: &CosetSpace, m: usize) -> u128 {
    (k.points() as u128).checked_pow(m.saturating_sub(1) as u32).unwrap_or(u128::MAX)
}

fn check_cap(k: &CosetSpace, m: usize, cap: u128) -> Result<()> {
    let need = normalized_tuples(k, m);
    if need > cap || (k.points() as u128).checked_pow(m as u32).is_none_or(|t| t > u64::MAX as u128) {
        return Err(Error::refused("tuple_cap_exceeded", need, cap));
    }
    Ok(())
}

fn build_differential(k: &CosetSpace, source: &[u64], target: &[u64], m: usize) -> ExactMatrix {
    let points = k.points();
    let mut scratch = Vec::with_capacity(m);
    let mut face = Vec::with_capacity(m);
    let rows = target
        .iter()
        .map(|&code| {
            let t = decode(code, m + 1, points);
            let mut row: Vec<(usize, BigInt)> = Vec::with_capacity(m + 1);
            for j in 0..=m {
                face.clear();
                face.extend(t.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x));
                let c = canonical_code(k, &face, &mut scratch);
                let col = source.binary_search(&c).expect("faces of orbits are orbits");
                row.push((col, BigInt::from(if j % 2 == 0 { 1 } else { -1 })));
            }
            row
        })
        .collect();
    ExactMatrix::from_row_entries(target.len(), source.len(), rows)
}

/// `d_n : I(K^n) -> I(K^{n+1})` in the canonical orbit bases.
pub fn differential_matrix(k: &CosetSpace, n: usize, cap: u128) -> Result<ExactMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("differentials start at level 1".into()));
    }
    check_cap(k, n + 1, cap)?;
    let source = canonical_representatives(k, n);
    let target = canonical_representatives(k, n + 1);
    Ok(build_differential(k, &source, &target, n))
}

impl InvariantChain {
    pub fn build(space: CosetSpace, max_level: usize, cap: u128) -> Result<Self> {
        if max_level == 0 {
            return Err(Error::InvalidArgument("max_level must be at least 1".into()));
        }
        check_cap(&space, max_level + 1, cap)?;
        let bases: Vec<Vec<u64>> = (1..=max_level + 1).map(|m| canonical_representatives(&space, m)).collect();
        let differentials = (1..=max_level).map(|m| build_differential(&space, &bases[m - 1], &bases[m], m)).collect();
        Ok(InvariantChain { space, max_level, bases, differentials })
    }

    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    /// Number of orbits on `K^m` for `m = 1..=max_level + 1`.
    pub fn orbit_counts(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    /// Canonical representative of orbit `i` on `K^m`.
    pub fn representative(&self, m: usize, i: usize) -> Vec<u32> {
        decode(self.bases[m - 1][i], m, self.space.points())
    }

    /// `d_m`, for `1 <= m <= max_level`.
    pub fn differential(&self, m: usize) -> Result<&ExactMatrix> {
        self.level_ok(m)?;
        Ok(&self.differentials[m - 1])
    }

    fn level_ok(&self, m: usize) -> Result<()> {
        if m == 0 || m > self.max_level {
            return Err(Error::LevelOutOfRange { level: m, max: self.max_level });
        }
        Ok(())
    }

    /// Checks `d_{m+1} d_m = 0` for every stored pair.
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| w[1].mul(&w[0]).is_ok_and(|p| p.is_zero()))
    }

    /// `ker d_m / im d_{m-1}`, with `d_0 = 0`.
    ///
    /// `ker d_m` is a direct summand containing `im d_{m-1}`, so the torsion
    /// is read off the Smith form of `d_{m-1}`. The rank of `d_m` is taken
    /// modulo a large prime and accepted when it meets the upper bound
    /// `n_m - rank d_{m-1}`; otherwise it is computed exactly.
    pub fn homology_at(&self, m: usize) -> Result<FgAbGroup> {
        self.level_ok(m)?;
        let n_m = self.bases[m - 1].len();
        let prev = if m >= 2 { smith_diagonal(&self.differentials[m - 2]) } else { Vec::new() };
        let d = &self.differentials[m - 1];
        if m >= 2 && !d.mul(&self.differentials[m - 2])?.is_zero() {
            return Err(Error::InvalidArgument(alloc::format!("d_{m} d_{} is not zero", m - 1)));
        }
        let upper = n_m - prev.len();
        let r = if rank_mod_p(d, DEFAULT_PRIME, Some(upper)) == upper { upper } else { exactla::rank(d) };
        let factors: Vec<BigInt> = prev.into_iter().filter(|x| !x.is_one()).collect();
        Ok(FgAbGroup::from_canonical(factors, upper - r))
    }
}

/// A cohomology group together with the orbit counts of the chain used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub group: FgAbGroup,
    pub orbit_counts: Vec<usize>,
}

/// `H^n(G)` with integer coefficients, from the chain over `K = G`.
pub fn group_cohomology(g: &FiniteGroup, n: usize, cap: u128) -> Result<FgAbGroup> {
    Ok(group_cohomology_report(g, n, cap)?.group)
}

pub fn group_cohomology_report(g: &FiniteGroup, n: usize, cap: u128) -> Result<CohomologyReport> {
    let space = CosetSpace::new(g.clone(), &[0])?;
    report(space, n + 1, cap)
}

/// `H^n(X|Y)` for a finite isometric extension with fiber `G/H`, where `H` is
/// generated by `h_gens`.
pub fn relative_cohomology_isometric(g: &FiniteGroup, h_gens: &[u32], n: usize, cap: u128) -> Result<FgAbGroup> {
    Ok(relative_cohomology_report(g, h_gens, n, cap)?.group)
}

pub fn relative_cohomology_report(g: &FiniteGroup, h_gens: &[u32], n: usize, cap: u128) -> Result<CohomologyReport> {
    let space = CosetSpace::generated(g.clone(), h_gens)?;
    report(space, n + 3, cap)
}

fn report(space: CosetSpace, m: usize, cap: u128) -> Result<CohomologyReport> {
    let chain = InvariantChain::build(space, m, cap)?;
    Ok(CohomologyReport { group: chain.homology_at(m)?, orbit_counts: chain.orbit_counts() })
}
