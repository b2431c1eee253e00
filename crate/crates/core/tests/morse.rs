use cantorext_core::cochain::{group_cohomology, DEFAULT_CAP};
use cantorext_core::dimlim::{
    fact_set_member, membership_in_limit, morse_coordinates, morse_report, morse_window, quotient_by_intertwiner,
    Intertwiner, StationaryLimit,
};
use cantorext_core::abelian::{torsion_part, FgAbGroup};
use cantorext_core::exactla::ExactMatrix;
use cantorext_core::groups::FiniteGroup;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn report_matches_known_values() {
    let r = morse_report().unwrap();
    assert!(r.failures.is_empty(), "{:?}", r.failures);
    assert!(r.passed());
    assert!(r.rb_equals_ar && r.r_unit);
    assert_eq!(r.quotient_xz.group(), Some(&FgAbGroup::cyclic(2)));
    assert_eq!(r.quotient_zy.group(), Some(&FgAbGroup::free(1)));
    assert_eq!(r.quotient_xy.group(), Some(&FgAbGroup::free(1)));
    let h2 = group_cohomology(&FiniteGroup::cyclic(2), 2, DEFAULT_CAP).unwrap();
    assert_eq!(r.h0_xz, Some(h2.clone()));
    assert_eq!(r.h2_z2, h2);
    assert_eq!(r.h0_xy, Some(FgAbGroup::trivial()));
    assert_eq!(r.h0_zy, Some(FgAbGroup::trivial()));
    assert_eq!(Some(torsion_part(r.quotient_xy.group().unwrap())), r.h0_xy);
    assert!(r.membership_samples >= 100);
}

#[test]
fn quotients_from_intertwiners() {
    for (r, expected) in [
        (Intertwiner::morse_r(), FgAbGroup::cyclic(2)),
        (Intertwiner::morse_q(), FgAbGroup::free(1)),
        (Intertwiner::morse_p(), FgAbGroup::free(1)),
    ] {
        assert_eq!(quotient_by_intertwiner(&r).unwrap().group(), Some(&expected));
    }
    let x = StationaryLimit::morse_x();
    let id = Intertwiner::new(x.clone(), x.clone(), ExactMatrix::identity(2)).unwrap();
    assert_eq!(quotient_by_intertwiner(&id).unwrap().group(), Some(&FgAbGroup::trivial()));
}

#[test]
fn window_and_code() {
    let w = morse_window(3);
    let bits = |v: &[u8]| v.iter().map(|b| char::from(b'0' + b)).collect::<String>();
    assert_eq!(bits(&w.x), "01101001");
    assert_eq!(bits(&w.z), "1011101");
    assert_eq!(w.cocycle_holds.len(), 7);
    let w6 = morse_window(6);
    assert!(w6.cocycle_ok());
    assert!(bits(&w6.x).starts_with("01101001"));
    assert_eq!(w6.x.len(), 64);
    // Thue-Morse: x_i is the parity of the binary digit sum of i
    for (i, &b) in w6.x.iter().enumerate() {
        assert_eq!(u32::from(b), i.count_ones() % 2);
    }
}

#[test]
fn membership_examples() {
    let x = StationaryLimit::morse_x();
    assert!(membership_in_limit(&x, &[q(2, 1), q(2, 1)]).unwrap());
    assert!(membership_in_limit(&x, &[q(1, 2), q(1, 2)]).unwrap());
    assert!(!membership_in_limit(&x, &[q(1, 3), q(0, 1)]).unwrap());
    assert!(fact_set_member(&q(6, 1), &BigInt::from(0)));
    assert!(fact_set_member(&q(2, 1), &BigInt::from(-1)));
    assert!(!fact_set_member(&q(1, 3), &BigInt::from(0)));
}

proptest! {
    #[test]
    fn set_description_agrees_with_limit(num in -200i64..200, exp in 0u32..6, three in any::<bool>(), b in -50i64..50) {
        let den = 2i64.pow(exp) * if three { 3 } else { 1 };
        let a = q(num, den);
        let b = BigInt::from(b);
        let v = morse_coordinates(&a, &b);
        prop_assert_eq!(membership_in_limit(&StationaryLimit::morse_x(), &v).unwrap(), fact_set_member(&a, &b));
    }
}
