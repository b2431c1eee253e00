use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::abelian::FgAbGroup;
use crate::exactla::{cokernel_structure, ExactMatrix};
use crate::{Error, Result};

/// Default bound on the order of a group built from permutations.
pub const DEFAULT_ORDER_CAP: usize = 10_080;

/// Permutation action of each element on `{0, .., degree - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermRep {
    pub degree: usize,
    pub images: Vec<Vec<u32>>,
}

/// Finite group given by its multiplication table. Elements are the indices
/// `0..order`, and `0` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    perms: Option<PermRep>,
}

fn is_permutation(row: &[u32], n: usize) -> bool {
    let mut seen = vec![false; n];
    row.iter().all(|&x| (x as usize) < n && !core::mem::replace(&mut seen[x as usize], true))
}

/// `(a * b)(x) = a(b(x))`.
fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&x| a[x as usize]).collect()
}

impl FiniteGroup {
    /// Validates a table: identity at 0, Latin square, associativity on all triples.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(alloc::format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidGroup(alloc::format!("entry {x} out of range in row {i}")));
                }
                flat.push(x as u32);
            }
        }
        Self::from_flat(n, flat, None)
    }

    fn from_flat(n: usize, flat: Vec<u32>, perms: Option<PermRep>) -> Result<Self> {
        let at = |a: usize, b: usize| flat[a * n + b] as usize;
        if (0..n).any(|a| at(0, a) != a || at(a, 0) != a) {
            return Err(Error::InvalidGroup("element 0 is not the identity".into()));
        }
        for a in 0..n {
            if !is_permutation(&flat[a * n..(a + 1) * n], n) {
                return Err(Error::InvalidGroup(alloc::format!("row {a} is not a permutation")));
            }
            let col: Vec<u32> = (0..n).map(|b| flat[b * n + a]).collect();
            if !is_permutation(&col, n) {
                return Err(Error::InvalidGroup(alloc::format!("column {a} is not a permutation")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(alloc::format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let inverse = (0..n).map(|a| (0..n).find(|&b| at(a, b) == 0).expect("Latin square") as u32).collect();
        Ok(FiniteGroup { order: n, table: flat, inverse, perms })
    }

    /// Closure of permutation generators of `{0, .., degree - 1}`, refused when
    /// the group would exceed `cap` elements.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<Self> {
        let gens: Vec<Vec<u32>> = generators.iter().map(|g| g.iter().map(|&x| x as u32).collect()).collect();
        for (i, g) in gens.iter().enumerate() {
            if g.len() != degree || !is_permutation(g, degree) {
                return Err(Error::InvalidGroup(alloc::format!("generator {i} is not a permutation of degree {degree}")));
            }
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut index: alloc::collections::BTreeMap<Vec<u32>, u32> = alloc::collections::BTreeMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = compose(g, &elements[x]);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::refused("group_order_cap_exceeded", cap as u128 + 1, cap as u128));
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut flat = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                flat.push(index[&compose(a, b)]);
            }
        }
        let inverse = elements
            .iter()
            .map(|a| {
                let mut inv = vec![0u32; degree];
                for (i, &x) in a.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                index[&inv]
            })
            .collect();
        Ok(FiniteGroup { order: n, table: flat, inverse, perms: Some(PermRep { degree, images: elements }) })
    }

    /// `Z/k` as the rotations of `k` points.
    pub fn cyclic(k: usize) -> Self {
        assert!(k >= 1);
        let gen: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        Self::from_permutations(k, &[gen], usize::MAX).expect("valid")
    }

    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        let mut gens = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            gens.push(swap);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Self::from_permutations(n, &gens, usize::MAX).expect("valid")
    }

    /// Generated by the 3-cycles `(0 1 k)`.
    pub fn alternating(n: usize) -> Self {
        assert!(n >= 1);
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        Self::from_permutations(n, &gens, usize::MAX).expect("valid")
    }

    /// Symmetries of the regular `n`-gon, of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3);
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rotation, reflection], usize::MAX).expect("valid")
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}` in its regular permutation action.
    pub fn quaternion() -> Self {
        // element 4*s + u is (-1)^s * [1, i, j, k][u]
        let unit_mul = |a: usize, b: usize| -> (usize, usize) {
            // (sign, unit) of unit_a * unit_b
            const T: [[(usize, usize); 4]; 4] = [
                [(0, 0), (0, 1), (0, 2), (0, 3)],
                [(0, 1), (1, 0), (0, 3), (1, 2)],
                [(0, 2), (1, 3), (1, 0), (0, 1)],
                [(0, 3), (0, 2), (1, 1), (1, 0)],
            ];
            T[a][b]
        };
        let mul = |x: usize, y: usize| {
            let (s, u) = unit_mul(x % 4, y % 4);
            4 * ((x / 4 + y / 4 + s) % 2) + u
        };
        let gens: Vec<Vec<usize>> = [1usize, 2].iter().map(|&g| (0..8).map(|y| mul(g, y)).collect()).collect();
        Self::from_permutations(8, &gens, usize::MAX).expect("valid")
    }

    /// Builtin groups by name: `Z<k>`, `S<n>`, `A<n>` (n <= 5), `D<n>`, `Q8`.
    pub fn builtin(name: &str) -> Result<Self> {
        let unknown = || Error::InvalidArgument(alloc::format!("unknown group name {name:?}"));
        if name == "Q8" {
            return Ok(Self::quaternion());
        }
        let (kind, rest) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
        let n: usize = rest.parse().map_err(|_| unknown())?;
        match kind {
            "Z" if (1..=DEFAULT_ORDER_CAP).contains(&n) => Ok(Self::cyclic(n)),
            "S" if (1..=5).contains(&n) => Ok(Self::symmetric(n)),
            "A" if (1..=5).contains(&n) => Ok(Self::alternating(n)),
            "D" if (3..=DEFAULT_ORDER_CAP / 2).contains(&n) => Ok(Self::dihedral(n)),
            _ => Err(unknown()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn perm_rep(&self) -> Option<&PermRep> {
        self.perms.as_ref()
    }

    /// Table rows, for serialization.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    /// Element acting as the given permutation, if there is one.
    pub fn element_of_permutation(&self, perm: &[usize]) -> Option<u32> {
        let rep = self.perms.as_ref()?;
        rep.images
            .iter()
            .position(|img| img.len() == perm.len() && img.iter().zip(perm).all(|(&a, &b)| a as usize == b))
            .map(|i| i as u32)
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y as usize] {
                    member[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order as u32).filter(|&x| member[x as usize]).collect()
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generating_set(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut member = vec![false; self.order];
        member[0] = true;
        for x in 0..self.order as u32 {
            if !member[x as usize] {
                gens.push(x);
                for y in self.closure(&gens) {
                    member[y as usize] = true;
                }
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..self.order as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The commutator subgroup, generated by all `a^-1 b^-1 a b`.
    pub fn commutator_subgroup(&self) -> Vec<u32> {
        let mut comms: Vec<u32> = Vec::new();
        let mut seen = vec![false; self.order];
        for a in 0..self.order as u32 {
            for b in 0..self.order as u32 {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if !core::mem::replace(&mut seen[c as usize], true) {
                    comms.push(c);
                }
            }
        }
        self.closure(&comms)
    }

    /// `G / [G, G]` in invariant-factor form.
    ///
    /// The quotient `Q` is presented as the free abelian group on its elements
    /// modulo `[e] = 0` and `[q] + [s] = [q s]` for `s` in a generating set.
    pub fn abelianization(&self) -> FgAbGroup {
        let g2 = self.commutator_subgroup();
        let mut coset = vec![u32::MAX; self.order];
        let mut count = 0u32;
        for x in 0..self.order as u32 {
            if coset[x as usize] == u32::MAX {
                for &h in &g2 {
                    coset[self.mul(x, h) as usize] = count;
                }
                count += 1;
            }
        }
        let reps: Vec<u32> = {
            let mut r = vec![u32::MAX; count as usize];
            for x in (0..self.order as u32).rev() {
                r[coset[x as usize] as usize] = x;
            }
            r
        };
        let q = count as usize;
        let gens = self.generating_set();
        let mut columns: Vec<Vec<(usize, BigInt)>> = vec![vec![(0, BigInt::from(1))]];
        for (qi, &x) in reps.iter().enumerate() {
            for &s in &gens {
                let prod = coset[self.mul(x, s) as usize] as usize;
                columns.push(vec![
                    (qi, BigInt::from(1)),
                    (coset[s as usize] as usize, BigInt::from(1)),
                    (prod, BigInt::from(-1)),
                ]);
            }
        }
        let relations = ExactMatrix::from_row_entries(columns.len(), q, columns).transpose();
        cokernel_structure(&relations)
    }

    /// Short description used in reports.
    pub fn describe(&self) -> String {
        match &self.perms {
            Some(p) => alloc::format!("order {} on {} points", self.order, p.degree),
            None => alloc::format!("order {}", self.order),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        let orders = [("Z2", 2), ("Z12", 12), ("S3", 6), ("S4", 24), ("S5", 120), ("A4", 12), ("A5", 60), ("D4", 8), ("Q8", 8)];
        for (name, n) in orders {
            assert_eq!(FiniteGroup::builtin(name).unwrap().order(), n, "{name}");
        }
        assert!(FiniteGroup::builtin("S6").is_err());
        assert!(FiniteGroup::builtin("X3").is_err());
    }

    #[test]
    fn permutation_closure_examples() {
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(FiniteGroup::from_permutations(2, &[vec![1, 0]], DEFAULT_ORDER_CAP).unwrap().order(), 2);
        let a4 = FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(a4.order(), 12);
    }

    #[test]
    fn closure_cap_is_a_refusal() {
        let err = FiniteGroup::from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], 10).unwrap_err();
        assert!(err.is_refusal());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).is_ok());
        // a Latin square with identity 0 that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(loop5).is_err());
    }

    #[test]
    fn group_axioms_hold_for_builtins() {
        for name in ["S4", "Q8", "D4", "A5"] {
            let g = FiniteGroup::builtin(name).unwrap();
            let rebuilt = FiniteGroup::from_table(g.table_rows()).unwrap();
            assert_eq!(rebuilt.order(), g.order());
            for a in 0..g.order() as u32 {
                assert_eq!(g.mul(a, g.inv(a)), 0);
            }
        }
    }

    #[test]
    fn abelianization_examples() {
        let z = |n| FgAbGroup::cyclic(n as i64);
        // commutator subgroups by enumeration: A3 in S3, {±1} in Q8
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.commutator_subgroup().len(), 3);
        assert_eq!(s3.abelianization(), z(2));
        for k in 2..=12 {
            assert_eq!(FiniteGroup::cyclic(k).abelianization(), z(k));
        }
        let q8 = FiniteGroup::quaternion();
        assert_eq!(q8.commutator_subgroup().len(), 2);
        assert_eq!(q8.abelianization(), z(2).direct_sum(&z(2)));
        assert!(FiniteGroup::alternating(5).abelianization().is_trivial());
        assert_eq!(FiniteGroup::alternating(4).abelianization(), z(3));
        assert_eq!(FiniteGroup::dihedral(4).abelianization(), z(2).direct_sum(&z(2)));
    }

    #[test]
    fn abelianization_order_divides_group_order() {
        for name in ["S3", "S4", "S5", "A4", "A5", "D4", "Q8", "Z6", "Z12"] {
            let g = FiniteGroup::builtin(name).unwrap();
            let ab = g.abelianization();
            let order = ab.order().unwrap();
            assert_eq!(order * BigInt::from(g.commutator_subgroup().len()), BigInt::from(g.order()), "{name}");
        }
    }
}
