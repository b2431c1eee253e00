use std::collections::BTreeSet;

use cantorext_core::groups::FiniteGroup;
use cantorext_core::toeplitz::{
    cocycle_product, essential_values_check, generate_window, natural_enumeration, prescribed_depth, regularity_profile,
};
use num_rational::Ratio;
use proptest::prelude::*;

const BUILTINS: &[&str] = &[
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12", "S3", "S4", "S5", "A4", "A5", "D4", "Q8",
];

fn check_invariants(g: &FiniteGroup, enumeration: &[u32], m: usize) {
    let w = generate_window(g, enumeration, m).unwrap();
    let v = w.values();
    assert_eq!(v.len(), 1 << m);
    for (i, &s) in w.stage_of().iter().enumerate() {
        assert_eq!(s as u32, (i + 1).trailing_zeros());
        // same stage, same value
        assert_eq!(v[i], v[(1 << s) - 1]);
    }
    assert!(v.iter().step_by(2).all(|&x| x == enumeration[0]));
    assert!(v.iter().skip(1).step_by(4).all(|&x| x == enumeration[1 % enumeration.len()]));
    let n = enumeration.len();
    for k in 2..=m {
        // a g_k b recomputed by hand, oldest-left
        let a = v[..(1 << k) - 1].iter().fold(g.identity(), |acc, &x| g.mul(acc, x));
        let b = v[..(1 << (k - 1)) - 1].iter().fold(g.identity(), |acc, &x| g.mul(acc, x));
        assert_eq!(g.mul(g.mul(a, v[(1 << k) - 1]), b), enumeration[k % n], "stage {k}");
        assert_eq!(w.construction_identity(k), Some(enumeration[k % n]));
    }
    let profile = regularity_profile(&w);
    for (k, d) in profile.iter().enumerate() {
        assert_eq!(*d, Ratio::new((1u64 << (k + 1)) - 1, 1u64 << (k + 1)));
    }
}

#[test]
fn builtin_windows_satisfy_invariants() {
    for name in BUILTINS {
        let g = FiniteGroup::builtin(name).unwrap();
        check_invariants(&g, &natural_enumeration(&g), prescribed_depth(g.order()));
    }
}

#[test]
fn prescribed_depths() {
    assert_eq!(prescribed_depth(2), 9);
    assert_eq!(prescribed_depth(8), 9);
    assert_eq!(prescribed_depth(24), 10);
    assert_eq!(prescribed_depth(60), 11);
    assert_eq!(prescribed_depth(120), 12);
}

#[test]
fn cocycle_products_match_naive_products() {
    let g = FiniteGroup::symmetric(3);
    let w = generate_window(&g, &natural_enumeration(&g), 9).unwrap();
    let v = w.values();
    for t in 0..=v.len() {
        let naive = v[..t].iter().rev().fold(g.identity(), |acc, &x| g.mul(acc, x));
        assert_eq!(cocycle_product(&w, t).unwrap(), naive);
    }
    assert!(cocycle_product(&w, v.len() + 1).is_err());
}

#[test]
fn worked_examples() {
    let z2 = FiniteGroup::cyclic(2);
    let w = generate_window(&z2, &[0, 1], 3).unwrap();
    assert_eq!(w.values(), &[0, 1, 0, 1, 0, 1, 0, 1]);
    assert_eq!(cocycle_product(&w, 2).unwrap(), 1);
    assert_eq!(cocycle_product(&w, 4).unwrap(), 0);
    assert_eq!(essential_values_check(&z2, &[0, 1], 5, 4).unwrap().realized, vec![0, 1]);
    let s3 = FiniteGroup::symmetric(3);
    let ev = essential_values_check(&s3, &natural_enumeration(&s3), 9, 8).unwrap();
    assert!(ev.complete);
    let trivial = FiniteGroup::cyclic(1);
    assert_eq!(generate_window(&trivial, &[0], 4).unwrap().values(), &[0; 16]);
    assert_eq!(essential_values_check(&trivial, &[0], 4, 2).unwrap().realized, vec![0]);
}

fn shuffled_enumeration(order: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((1..order as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|rest| {
        let mut e = vec![0];
        e.extend(rest);
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_enumerations_satisfy_invariants(
        (name, enumeration) in prop::sample::select(BUILTINS).prop_flat_map(|name| {
            let order = FiniteGroup::builtin(name).unwrap().order();
            (Just(name), shuffled_enumeration(order))
        }),
        m in 2usize..=10,
    ) {
        let g = FiniteGroup::builtin(name).unwrap();
        check_invariants(&g, &enumeration, m);
    }

    #[test]
    fn essential_values_match_direct_scan(
        (name, enumeration) in prop::sample::select(&["Z5", "Z6", "S3", "D4", "Q8", "A4"][..]).prop_flat_map(|name| {
            let order = FiniteGroup::builtin(name).unwrap().order();
            (Just(name), shuffled_enumeration(order))
        }),
        radius in 1usize..=8,
    ) {
        let g = FiniteGroup::builtin(name).unwrap();
        let m = prescribed_depth(g.order());
        let w = generate_window(&g, &enumeration, m).unwrap();
        let v = w.values();
        let expected: BTreeSet<u32> = (1..=1usize << (m - 1))
            .filter(|&t| v[t..t + radius] == v[..radius])
            .map(|t| cocycle_product(&w, t).unwrap())
            .collect();
        let ev = essential_values_check(&g, &enumeration, m, radius).unwrap();
        prop_assert_eq!(ev.realized, expected.into_iter().collect::<Vec<_>>());
        prop_assert_eq!(g.order() % ev.generated_order, 0);
    }
}

#[test]
fn rejects_bad_input() {
    let s3 = FiniteGroup::symmetric(3);
    assert!(generate_window(&s3, &[1, 0, 2, 3, 4, 5], 4).is_err());
    assert!(generate_window(&s3, &[0, 0, 2, 3, 4, 5], 4).is_err());
    assert!(generate_window(&s3, &natural_enumeration(&s3), 1).is_err());
    assert!(generate_window(&s3, &natural_enumeration(&s3), 27).is_err());
}
