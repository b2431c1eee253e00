//! A Toeplitz sequence `omega` over a finite group `G = {u_0 = e, .., u_{N-1}}`
//! whose skew product with the cocycle `omega(0)` is meant to be minimal.
//!
//! Stage 0 fills the even positions with `u_0` and stage 1 the positions
//! `4n + 1` with `u_1`. Stage `k >= 2` fills the positions `i` where `i + 1` has
//! 2-adic valuation `k` with the solution `g_k` of `a g_k b = u_{k mod N}`,
//! where `a = omega(0) .. omega(2^k - 2)` and `b = omega(0) .. omega(2^(k-1) - 2)`.
//! Only the one-sided window `[0, 2^m)` is generated.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::groups::FiniteGroup;
use crate::{Error, Result};

/// Order of the factors in a product of consecutive sequence values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOrder {
    /// `omega(0) omega(1) .. omega(t - 1)`.
    OldestLeft,
    /// `omega(t - 1) .. omega(1) omega(0)`.
    NewestLeft,
}

/// Order used for the stage products `a` and `b`.
pub const STAGE_ORDER: ProductOrder = ProductOrder::OldestLeft;
/// Order used for cocycle products.
pub const COCYCLE_ORDER: ProductOrder = ProductOrder::NewestLeft;

/// Largest supported depth; the window has `2^m` entries.
pub const MAX_DEPTH: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeplitzWindow {
    group: FiniteGroup,
    enumeration: Vec<u32>,
    depth: usize,
    values: Vec<u32>,
    stage_of: Vec<u8>,
}

/// `max(9, ceil(log2(8N)) + 2)`.
pub fn prescribed_depth(order: usize) -> usize {
    let bits = (8 * order).next_power_of_two().trailing_zeros() as usize;
    (bits + 2).max(9)
}

fn check_enumeration(group: &FiniteGroup, enumeration: &[u32]) -> Result<()> {
    let n = group.order();
    if enumeration.len() != n {
        return Err(Error::InvalidArgument(alloc::format!("enumeration has {} elements, group has {n}", enumeration.len())));
    }
    let mut seen = vec![false; n];
    for &u in enumeration {
        if u as usize >= n || core::mem::replace(&mut seen[u as usize], true) {
            return Err(Error::InvalidArgument("enumeration is not a bijection onto the group".into()));
        }
    }
    if enumeration[0] != group.identity() {
        return Err(Error::InvalidArgument("enumeration must start with the identity".into()));
    }
    Ok(())
}

fn product(group: &FiniteGroup, values: &[u32], order: ProductOrder) -> u32 {
    match order {
        ProductOrder::OldestLeft => values.iter().fold(0, |acc, &x| group.mul(acc, x)),
        ProductOrder::NewestLeft => values.iter().fold(0, |acc, &x| group.mul(x, acc)),
    }
}

/// Position `i` is filled at stage `v2(i + 1)`.
pub fn stage_of_position(i: usize) -> usize {
    (i + 1).trailing_zeros() as usize
}

/// Index-order enumeration `u_j = j`.
pub fn natural_enumeration(group: &FiniteGroup) -> Vec<u32> {
    (0..group.order() as u32).collect()
}

pub fn generate_window(group: &FiniteGroup, enumeration: &[u32], m: usize) -> Result<ToeplitzWindow> {
    check_enumeration(group, enumeration)?;
    if m < 2 {
        return Err(Error::InvalidArgument("depth must be at least 2".into()));
    }
    if m > MAX_DEPTH {
        return Err(Error::refused("toeplitz_depth_exceeded", m as u128, MAX_DEPTH as u128));
    }
    let n = enumeration.len();
    let len = 1usize << m;
    let mut values = vec![u32::MAX; len];
    let stage_of: Vec<u8> = (0..len).map(|i| stage_of_position(i) as u8).collect();
    let fill = |values: &mut Vec<u32>, k: usize, g: u32| {
        let mut i = (1 << k) - 1;
        while i < len {
            values[i] = g;
            i += 1 << (k + 1);
        }
    };
    fill(&mut values, 0, enumeration[0]);
    fill(&mut values, 1, enumeration[1 % n]);
    for k in 2..=m {
        let a = product(group, &values[..(1 << k) - 1], STAGE_ORDER);
        let b = product(group, &values[..(1 << (k - 1)) - 1], STAGE_ORDER);
        let g = group.mul(group.mul(group.inv(a), enumeration[k % n]), group.inv(b));
        fill(&mut values, k, g);
    }
    debug_assert!(values.iter().all(|&v| v != u32::MAX));
    Ok(ToeplitzWindow { group: group.clone(), enumeration: enumeration.to_vec(), depth: m, values, stage_of })
}

impl ToeplitzWindow {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn enumeration(&self) -> &[u32] {
        &self.enumeration
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn stage_of(&self) -> &[u8] {
        &self.stage_of
    }

    /// `g_k`, the value at the positions filled by stage `k`.
    pub fn stage_value(&self, k: usize) -> Option<u32> {
        (k <= self.depth).then(|| self.values[(1 << k) - 1])
    }

    /// `a_k g_k b_k` recomputed from the window, which should be `u_{k mod N}`.
    pub fn construction_identity(&self, k: usize) -> Option<u32> {
        if !(2..=self.depth).contains(&k) {
            return None;
        }
        let a = product(&self.group, &self.values[..(1 << k) - 1], STAGE_ORDER);
        let b = product(&self.group, &self.values[..(1 << (k - 1)) - 1], STAGE_ORDER);
        Some(self.group.mul(self.group.mul(a, self.values[(1 << k) - 1]), b))
    }
}

/// `omega(t - 1) .. omega(0)`, the identity for `t = 0`.
pub fn cocycle_product(w: &ToeplitzWindow, t: usize) -> Result<u32> {
    cocycle_product_with(w, t, COCYCLE_ORDER)
}

pub fn cocycle_product_with(w: &ToeplitzWindow, t: usize, order: ProductOrder) -> Result<u32> {
    if t > w.values.len() {
        return Err(Error::InvalidArgument(alloc::format!("t = {t} beyond window of length {}", w.values.len())));
    }
    Ok(product(&w.group, &w.values[..t], order))
}

/// Values realized as cocycle products at return times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialValues {
    /// Sorted element indices.
    pub realized: Vec<u32>,
    /// Return times `t` found in `1..=2^(m-1)`.
    pub return_times: usize,
    /// The realized set is the whole group.
    pub complete: bool,
    /// Order of the subgroup generated by the realized values.
    pub generated_order: usize,
}

/// Cocycle products `omega(t - 1) .. omega(0)` over the `t` in `1..=2^(m-1)`
/// for which the window shifted by `t` agrees with itself on `[0, w)`.
pub fn essential_values_check(group: &FiniteGroup, enumeration: &[u32], m: usize, radius: usize) -> Result<EssentialValues> {
    essential_values_with(group, enumeration, m, radius, COCYCLE_ORDER)
}

pub fn essential_values_with(
    group: &FiniteGroup,
    enumeration: &[u32],
    m: usize,
    radius: usize,
    order: ProductOrder,
) -> Result<EssentialValues> {
    let window = generate_window(group, enumeration, m)?;
    let half = 1usize << (m - 1);
    if radius > half {
        return Err(Error::InvalidArgument(alloc::format!("agreement radius {radius} exceeds 2^(m-1) = {half}")));
    }
    let v = &window.values;
    let mut realized = BTreeSet::new();
    let mut return_times = 0;
    let mut acc = group.identity();
    for t in 1..=half {
        acc = match order {
            ProductOrder::NewestLeft => group.mul(v[t - 1], acc),
            ProductOrder::OldestLeft => group.mul(acc, v[t - 1]),
        };
        if v[t..t + radius] == v[..radius] {
            realized.insert(acc);
            return_times += 1;
        }
    }
    let realized: Vec<u32> = realized.into_iter().collect();
    let complete = realized.len() == group.order();
    let generated_order = group.closure(&realized).len();
    Ok(EssentialValues { realized, return_times, complete, generated_order })
}

/// Density on the window of the positions filled by stages `<= k`, for `k < m`.
pub fn regularity_profile(w: &ToeplitzWindow) -> Vec<Ratio<u64>> {
    let len = w.values.len() as u64;
    let mut counts = vec![0u64; w.depth + 1];
    for &s in &w.stage_of {
        counts[s as usize] += 1;
    }
    let mut cumulative = 0;
    (0..w.depth)
        .map(|k| {
            cumulative += counts[k];
            Ratio::new(cumulative, len)
        })
        .collect()
}
