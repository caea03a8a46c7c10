use proptest::prelude::*;
use torelli_core::catalog::build_catalog;
use torelli_core::johnson::{
    curated_family, defect_is_zero, pair_index, lambda2, lambda3_defect, lambda3_dim, raw_pair_sum, tau, tau_span_rank, Lambda2Element,
};
use torelli_core::word::Letter;
use torelli_core::{FreeAutomorphism, Word};

/// Independent λ: coefficient of x∧y is the signed count of ordered
/// occurrences, antisymmetrized and halved.
fn oracle_lambda(w: &Word, n: usize) -> Lambda2Element {
    let ls = w.letters();
    let mut out = Lambda2Element::zero(n);
    for p in 0..n {
        for q in p + 1..n {
            let mut s = 0i64;
            for a in 0..ls.len() {
                for b in a + 1..ls.len() {
                    let (x, y) = (ls[a], ls[b]);
                    let (ix, iy) = (x.unsigned_abs() as usize - 1, y.unsigned_abs() as usize - 1);
                    let sg = (x.signum() * y.signum()) as i64;
                    if ix == p && iy == q {
                        s += sg;
                    } else if ix == q && iy == p {
                        s -= sg;
                    }
                }
            }
            assert_eq!(s % 2, 0);
            out.coords[pair_index(n, p, q)] += s / 2;
        }
    }
    out
}

fn letters(rank: usize, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    let r = rank as Letter;
    prop::collection::vec((1..=r, any::<bool>()).prop_map(|(x, s)| if s { x } else { -x }), 0..=max)
}

/// u · σ(u)⁻¹ with σ a permutation of positions.
fn commutator_word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
    letters(rank, max / 2).prop_flat_map(|ls| {
        let n = ls.len();
        (Just(ls), Just(n).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle()))
    })
    .prop_map(|(ls, perm)| {
        let u = Word::from_letters(ls.clone());
        let v = Word::from_letters(perm.iter().map(|&i| ls[i]));
        u.mul(&v.inverse())
    })
}

#[test]
fn lambda_examples() {
    let a = Word::letter(1);
    let b = Word::letter(2);
    let c = Word::commutator(&a, &b);
    // pair-sum of (-a,-b,+a,+b) is 2 a∧b
    assert_eq!(raw_pair_sum(&c, 4)[0], 2);
    assert_eq!(lambda2(&c, 4).unwrap(), Lambda2Element::wedge(4, 0, 1));
    assert_eq!(oracle_lambda(&c, 4), Lambda2Element::wedge(4, 0, 1));
    assert!(lambda2(&a, 4).is_err());
}

#[test]
fn tau_examples() {
    let cat = build_catalog(3).unwrap();
    assert!(tau(&FreeAutomorphism::identity(6)).unwrap().is_zero());
    assert!(tau(&cat.separating_twist("sep_1").unwrap()).unwrap().is_zero());
    let bp = cat.bounding_pair("alpha_1", "alphap_1").unwrap();
    assert!(!bp.is_identity());
    let t = tau(&bp).unwrap();
    assert!(!t.is_zero());
    assert_eq!(tau_span_rank(&[]).unwrap(), 0);
    assert_eq!(tau_span_rank(&[bp]).unwrap(), 1);
    assert!(tau(&cat.twist("alpha_1").unwrap().clone()).is_err());
}

#[test]
fn defects_vanish_on_catalog_bounding_pairs() {
    for g in 2..=6 {
        let cat = build_catalog(g).unwrap();
        for (a, b) in cat.bounding_pairs() {
            let t = tau(&cat.bounding_pair(&a, &b).unwrap()).unwrap();
            assert!(defect_is_zero(&t), "g = {g}, {a}/{b}");
            assert!(lambda3_defect(&t).iter().all(|&x| x == 0));
        }
        for s in cat.separating_curves() {
            assert!(tau(&cat.separating_twist(&s).unwrap()).unwrap().is_zero(), "g = {g}, {s}");
        }
    }
}

#[test]
fn curated_genus_four_is_full_rank() {
    let cat = build_catalog(4).unwrap();
    let fam: Vec<FreeAutomorphism> = curated_family(&cat).unwrap().into_iter().map(|x| x.1).collect();
    assert_eq!(fam.len(), 56);
    assert_eq!(tau_span_rank(&fam).unwrap(), lambda3_dim(4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lambda_matches_oracle(w in commutator_word(4, 30)) {
        prop_assert_eq!(lambda2(&w, 4).unwrap(), oracle_lambda(&w, 4));
    }

    #[test]
    fn pair_sum_is_even(w in commutator_word(6, 40)) {
        prop_assert!(raw_pair_sum(&w, 6).iter().all(|x| x % 2 == 0));
    }

    #[test]
    fn lambda_additive_and_invariant(u in commutator_word(4, 30), v in commutator_word(4, 30), g in letters(4, 10)) {
        let g = Word::from_letters(g);
        let (lu, lv) = (lambda2(&u, 4).unwrap(), lambda2(&v, 4).unwrap());
        prop_assert_eq!(lambda2(&u.mul(&v), 4).unwrap(), lu.add(&lv));
        prop_assert_eq!(lambda2(&u.conjugate(&g), 4).unwrap(), lu);
    }

    #[test]
    fn lambda_vanishes_on_third_term(u in commutator_word(4, 20), x in letters(4, 10)) {
        let x = Word::from_letters(x);
        prop_assert!(lambda2(&Word::commutator(&u, &x), 4).unwrap().is_zero());
    }

    #[test]
    fn tau_additive(i in 0usize..6, j in 0usize..6, si in any::<bool>(), sj in any::<bool>()) {
        let cat = build_catalog(3).unwrap();
        let bps = cat.bounding_pairs();
        let pick = |k: usize, s: bool| {
            let f = cat.bounding_pair(&bps[k].0, &bps[k].1).unwrap();
            if s { f } else { f.inverse() }
        };
        let (f, h) = (pick(i, si), pick(j, sj));
        let tf = tau(&f).unwrap();
        let th = tau(&h).unwrap();
        prop_assert_eq!(tau(&FreeAutomorphism::compose(&f, &h)).unwrap(), tf.add(&th));
        prop_assert!(tau_span_rank(&[f, h]).unwrap() <= lambda3_dim(3));
    }
}
