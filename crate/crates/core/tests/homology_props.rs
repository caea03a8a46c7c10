use num_bigint::BigInt;
use proptest::prelude::*;
use torelli_core::homology::{
    is_symplectic, is_torelli, pairing, smith_normal_form, snf_rank, solve_in_spans, symplectic_form, symplectic_inverse,
    transvection,
};
use torelli_core::{HomologyClass, IntegerMatrix};

fn class(g: usize) -> impl Strategy<Value = HomologyClass> {
    prop::collection::vec(-4i64..=4, 2 * g).prop_map(|v| HomologyClass::from_i64(&v))
}

#[test]
fn pairing_examples() {
    assert_eq!(pairing(&HomologyClass::a(3, 1), &HomologyClass::b(3, 1)).unwrap(), BigInt::from(1));
    assert_eq!(pairing(&HomologyClass::a(3, 1), &HomologyClass::a(3, 2)).unwrap(), BigInt::from(0));
}

#[test]
fn transvection_examples() {
    let g = 2;
    let t = transvection(&HomologyClass::a(g, 1));
    assert_eq!(t.apply(&HomologyClass::a(g, 1)), HomologyClass::a(g, 1));
    // b1 + <b1,a1> a1 = b1 - a1
    assert_eq!(t.apply(&HomologyClass::b(g, 1)), HomologyClass::b(g, 1).sub(&HomologyClass::a(g, 1)));
    assert!(!is_torelli(&t).unwrap());
    assert!(is_torelli(&transvection(&HomologyClass::zero(g))).unwrap());
    assert!(is_torelli(&IntegerMatrix::from_i64_rows(&[vec![1, 0], vec![0, 1]])).unwrap());
    assert!(is_torelli(&IntegerMatrix::zeros(2, 3)).is_err());
}

#[test]
fn snf_examples() {
    assert_eq!(snf_rank(&IntegerMatrix::identity(6)), 6);
    assert_eq!(snf_rank(&IntegerMatrix::zeros(4, 4)), 0);
    assert_eq!(snf_rank(&IntegerMatrix::from_i64_rows(&[vec![2, 0], vec![0, 0]])), 1);
    let s = smith_normal_form(&IntegerMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]]));
    assert_eq!(s.divisors, vec![BigInt::from(2), BigInt::from(4)]);
}

#[test]
fn span_examples() {
    let e = |k: usize| HomologyClass::basis(3, k - 1);
    let (h1, h2) = solve_in_spans(&e(3).add(&e(6)), &[e(3), e(4)], &[e(5), e(6)]).unwrap();
    assert_eq!((h1, h2), (e(3), e(6)));
    assert!(solve_in_spans(&e(1), &[e(3)], &[e(5)]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pairing_is_skew(x in class(3), y in class(3)) {
        prop_assert_eq!(pairing(&x, &y).unwrap(), -pairing(&y, &x).unwrap());
        prop_assert_eq!(pairing(&x, &x).unwrap(), BigInt::from(0));
    }

    #[test]
    fn transvections_are_symplectic(c in class(3)) {
        let t = transvection(&c);
        prop_assert!(is_symplectic(&t));
        let j = symplectic_form(3);
        prop_assert_eq!(t.transpose().mul(&j).unwrap().mul(&t).unwrap(), j);
        prop_assert!(t.mul(&symplectic_inverse(&t)).unwrap().is_identity());
    }

    #[test]
    fn bounding_pair_principle(c in class(3), d in class(3)) {
        let m = transvection(&c).mul(&symplectic_inverse(&transvection(&d))).unwrap();
        prop_assert_eq!(is_torelli(&m).unwrap(), c == d || c == d.neg());
    }

    #[test]
    fn snf_rank_invariant(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 5), 4), a in 0usize..4, b in 0usize..4) {
        let m = IntegerMatrix::from_i64_rows(&rows);
        let r = snf_rank(&m);
        let mut s = m.clone();
        s.swap_rows(a, b);
        s.swap_cols(a, b);
        prop_assert_eq!(snf_rank(&s), r);
        prop_assert_eq!(snf_rank(&m.transpose()), r);
    }

    #[test]
    fn span_round_trip(
        s1 in prop::collection::vec(class(3), 1..=3),
        s2 in prop::collection::vec(class(3), 1..=3),
        k in prop::collection::vec(-3i64..=3, 6),
    ) {
        let mut target = HomologyClass::zero(3);
        for (s, &c) in s1.iter().chain(&s2).zip(k.iter().cycle()) {
            target = target.add(&s.scale(&BigInt::from(c)));
        }
        let (h1, h2) = solve_in_spans(&target, &s1, &s2).unwrap();
        prop_assert_eq!(h1.add(&h2), target);
    }
}
