use cantorext_core::exactla::modp::{rank_mod_p, DEFAULT_PRIME};
use cantorext_core::exactla::{
    cokernel_structure, hermite_form, kernel_basis, rank, smith_diagonal, snf, solve_integer, ExactMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r))
}

fn sparse_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..12usize, 1..12usize).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(prop_oneof![6 => Just(0i64), 1 => -3i64..=3], c), r)
    })
}

fn build(rows: &[Vec<i64>], cols: usize) -> ExactMatrix {
    if rows.is_empty() {
        ExactMatrix::zeros(0, cols)
    } else {
        ExactMatrix::from_rows(rows.to_vec())
    }
}

fn width(rows: &[Vec<i64>]) -> usize {
    rows.first().map_or(0, |r| r.len())
}

/// All k-subsets of 0..n.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: D_k = gcd of k x k minors.
fn determinantal_factors(m: &ExactMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                g = g.gcd(&m.select_rows(&rs).select_cols(&cs).determinant().unwrap());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_identities(rows in matrix(7, 20)) {
        let m = build(&rows, width(&rows));
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        if m.rows() > 0 {
            prop_assert!(s.u.determinant().unwrap().abs().is_one());
        }
        if m.cols() > 0 {
            prop_assert!(s.v.determinant().unwrap().abs().is_one());
        }
        let diag = s.diagonal();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        prop_assert!(diag.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        // idempotent
        prop_assert_eq!(snf(&s.d).d, s.d.clone());
        prop_assert_eq!(smith_diagonal(&m), diag.iter().filter(|x| !x.is_zero()).cloned().collect::<Vec<_>>());
    }

    #[test]
    fn smith_matches_determinantal_divisors(rows in matrix(4, 9)) {
        let m = build(&rows, width(&rows));
        prop_assert_eq!(smith_diagonal(&m), determinantal_factors(&m));
    }

    #[test]
    fn cokernel_order_is_determinant(rows in (1..7usize).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-20i64..=20, n), n))) {
        let m = ExactMatrix::from_rows(rows);
        let det = m.determinant().unwrap();
        let coker = cokernel_structure(&m);
        if det.is_zero() {
            prop_assert!(coker.rank() > 0);
        } else {
            prop_assert_eq!(coker.order().unwrap(), det.abs());
        }
        prop_assert_eq!(coker.rank(), m.rows() - rank(&m));
    }

    #[test]
    fn kernel_is_saturated(rows in matrix(6, 6)) {
        let m = build(&rows, width(&rows));
        let basis = kernel_basis(&m);
        prop_assert_eq!(basis.len(), m.cols() - rank(&m));
        for v in &basis {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
        if !basis.is_empty() {
            // the basis spans a direct summand: its Smith factors are all 1
            let b = ExactMatrix::from_rows(basis.clone());
            prop_assert!(smith_diagonal(&b).iter().all(|x| x.is_one()));
        }
    }

    #[test]
    fn solving_recovers_consistent_systems(rows in matrix(6, 10), seed in proptest::collection::vec(-5i64..=5, 6)) {
        let m = build(&rows, width(&rows));
        let x: Vec<BigInt> = seed.iter().take(m.cols()).map(|&s| BigInt::from(s)).chain(std::iter::repeat(BigInt::zero())).take(m.cols()).collect();
        let b = m.mul_vec(&x).unwrap();
        let y = solve_integer(&m, &b).unwrap().expect("consistent");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn sparse_and_dense_agree(rows in sparse_matrix()) {
        let m = ExactMatrix::from_rows(rows);
        let dense = m.to_dense();
        let sparse = m.to_sparse();
        prop_assert_eq!(&dense, &sparse);
        prop_assert_eq!(smith_diagonal(&dense), smith_diagonal(&sparse));
        prop_assert!(rank_mod_p(&sparse, DEFAULT_PRIME, None) <= rank(&dense));
        prop_assert_eq!(rank_mod_p(&sparse, DEFAULT_PRIME, None), rank(&dense));
        prop_assert_eq!(dense.transpose().transpose(), sparse);
    }

    #[test]
    fn hermite_is_canonical(rows in matrix(5, 10)) {
        let m = build(&rows, width(&rows));
        let h = hermite_form(&m);
        // same row lattice: each side solves into the other
        prop_assert_eq!(hermite_form(&h), h.clone());
        prop_assert_eq!(h.rows(), rank(&m));
    }
}

#[test]
fn spec_examples() {
    let d = |rows: Vec<Vec<i64>>| snf(&ExactMatrix::from_rows(rows)).diagonal();
    let ints = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    assert_eq!(d(vec![vec![1, 0], vec![0, 1]]), ints(&[1, 1]));
    assert_eq!(d(vec![vec![2, -2], vec![0, 2]]), ints(&[2, 2]));
    assert_eq!(d(vec![vec![2, 4], vec![6, 8]]), ints(&[2, 4]));
    assert_eq!(kernel_basis(&ExactMatrix::from_rows(vec![vec![1, 1]])), vec![ints(&[1, -1])]);
    assert!(kernel_basis(&ExactMatrix::identity(2)).is_empty());
    assert_eq!(kernel_basis(&ExactMatrix::zeros(1, 2)).len(), 2);
    assert_eq!(cokernel_structure(&ExactMatrix::from_rows(vec![vec![2, -2], vec![0, 2]])).to_string(), "Z/2 + Z/2");
    assert!(cokernel_structure(&ExactMatrix::from_rows(vec![vec![1]])).is_trivial());
    assert_eq!(cokernel_structure(&ExactMatrix::column(&ints(&[2, 1]))).to_string(), "Z");
    let two = ExactMatrix::from_rows(vec![vec![2]]);
    assert_eq!(solve_integer(&two, &ints(&[4])).unwrap(), Some(ints(&[2])));
    assert_eq!(solve_integer(&two, &ints(&[3])).unwrap(), None);
    let r = ExactMatrix::from_rows(vec![vec![2, -2], vec![0, 2]]);
    assert_eq!(solve_integer(&r, &ints(&[2, 2])).unwrap(), Some(ints(&[2, 1])));
    assert!(snf(&ExactMatrix::zeros(0, 3)).diagonal().is_empty());
}

#[test]
fn large_entries_do_not_overflow() {
    let big = BigInt::from(i64::MAX);
    let m = ExactMatrix::from_dense(2, 2, vec![big.clone(), big.clone() + 1, big.clone() - 1, big.clone()]);
    let det = m.determinant().unwrap();
    assert_eq!(cokernel_structure(&m).order().unwrap(), det.abs());
    let sparse = m.to_sparse();
    assert_eq!(smith_diagonal(&sparse), smith_diagonal(&m));
}
