use proptest::prelude::*;
use torelli_core::commutator::{
    basis_elements, case1_identity, case2_identity, exceptional_set, freeness_counterexample, is_exceptional, k_membership,
    realize, rewrite, CaseContext, CaseParams, KSubgroup, Lead, OrderedBasisContext, TomaszewskiElement,
};
use torelli_core::word::{alpha, beta, boundary_word, handle_of, Letter};
use torelli_core::Word;

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn commutator_word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
    let r = rank as Letter;
    prop::collection::vec((1..=r, any::<bool>()).prop_map(|(x, s)| if s { x } else { -x }), 0..=max / 2)
        .prop_flat_map(|ls| {
            let n = ls.len();
            (Just(ls), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(ls, perm)| {
            let u = Word::from_letters(ls.clone());
            u.mul(&Word::from_letters(perm.iter().map(|&i| ls[i])).inverse())
        })
}

#[test]
fn spec_rewrite_example() {
    let ctx = OrderedBasisContext::standard(3);
    let c = Word::commutator(&w("x1"), &w("x2 x3"));
    assert_eq!(c, w("X1 X3 X2 x1 x2 x3"));
    let f = rewrite(&c, &ctx).unwrap();
    assert_eq!(
        f.elements,
        vec![TomaszewskiElement::new(1, 3, vec![0, 0, 0], 1), TomaszewskiElement::new(1, 2, vec![0, 0, 1], 1)]
    );
    // [a,bc] = [a,c]·[a,b]^c
    assert_eq!(f.product(&ctx), c);
}

#[test]
fn desk_scale_freeness() {
    for n in 2..=3 {
        assert!(freeness_counterexample(n, 1, 3).is_none(), "n = {n}");
    }
}

#[test]
fn exceptional_partition_genus_three() {
    let ctx = OrderedBasisContext::handle_two_first(3);
    let p = exceptional_set(&ctx, 1);
    let all = basis_elements(6, 1);
    assert_eq!(p.exceptional.len() + p.regular.len(), all.len());
    assert!(p.regular_outside_k2.is_empty());
    let k2 = KSubgroup::new(3, 2);
    for e in &p.exceptional {
        assert!(is_exceptional(e, &ctx));
        let first = ctx.letter_at(e.i);
        assert!(first == alpha(2) || first == beta(2));
    }
    for e in &p.regular {
        assert!(!is_exceptional(e, &ctx));
        assert!(k_membership(&realize(e, &ctx), &k2));
    }
    // [α₂,β₂] with a tail in K₂ letters is still exceptional
    let e = TomaszewskiElement::new(1, 2, vec![0, 0, 1, 0, 0, 0], 1);
    assert!(is_exceptional(&e, &ctx));
}

#[test]
fn k_membership_off_handle() {
    for g in 3..=4 {
        for i in 1..=g {
            let k = KSubgroup::new(g, i);
            assert!(k_membership(&Word::commutator(&Word::letter(alpha(i)), &Word::letter(beta(i))), &k));
            for j in 1..=g {
                if j != i {
                    let c = Word::commutator(&Word::letter(alpha(i)), &Word::letter(alpha(j)));
                    assert!(!k_membership(&c, &k));
                }
            }
        }
    }
}

#[test]
fn case_identities_examples() {
    let cx = CaseContext::new(3);
    let p = CaseParams { genus: 3, n: vec![1, 0, 0], m: vec![0; 3], lead: Lead::Alpha2, zeta: alpha(3) };
    let o = case1_identity(&p, &w("a1"), &cx).unwrap();
    assert!(o.holds());
    assert!(o.theta.in_commutator_subgroup(6));
    let p = CaseParams { genus: 3, n: vec![0, 1, 2], m: vec![1, -1, 1], lead: Lead::Beta2, zeta: beta(1) };
    let wg = w("a3 a3 b3").mul(&boundary_word(3));
    assert!(case2_identity(&p, &wg, &cx).unwrap().holds());
    assert!(case2_identity(&p, &w("a3 b3"), &cx).is_err());
    assert!(case1_identity(&p, &w("b1"), &cx).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rewrite_round_trip(n in 2usize..=6, w in commutator_word(6, 40), shift in 0usize..6) {
        // restrict to rank n by folding letters
        let w = Word::from_letters(w.letters().iter().map(|&x| x.signum() * ((x.unsigned_abs() as usize - 1) % n + 1) as Letter));
        let order: Vec<Letter> = (0..n).map(|k| ((k + shift) % n + 1) as Letter).collect();
        let ctx = OrderedBasisContext::new(n, order).unwrap();
        let f = rewrite(&w, &ctx).unwrap();
        prop_assert_eq!(f.product(&ctx), w);
    }

    #[test]
    fn rewrite_of_basis_element_is_itself(i in 1usize..4, dj in 1usize..3, tail in prop::collection::vec(-2i64..=2, 4), neg in any::<bool>()) {
        let n = 5;
        let j = (i + dj).min(n);
        let e = TomaszewskiElement::new(i, j, tail.into_iter().chain([0, 0]).take(n - i + 1).collect(), if neg { -1 } else { 1 });
        let ctx = OrderedBasisContext::standard(n);
        prop_assert_eq!(rewrite(&realize(&e, &ctx), &ctx).unwrap().elements, vec![e]);
    }

    #[test]
    fn k_membership_implies_off_handle_abelianization(w in commutator_word(6, 30), i in 1usize..=3) {
        let k = KSubgroup::new(3, i);
        if k_membership(&w, &k) {
            let ab = w.abelianization(6);
            prop_assert_eq!(ab[2 * (i - 1)], 0);
            prop_assert_eq!(ab[2 * (i - 1) + 1], 0);
        }
        // commutator words avoiding handle i lie in K_i
        if w.letters().iter().all(|&x| handle_of(x) != i) && w.in_commutator_subgroup(6) {
            prop_assert!(k_membership(&w, &k));
        }
    }
}
