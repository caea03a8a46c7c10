use num_bigint::BigInt;
use proptest::prelude::*;
use torelli_core::genset::{
    boundary_count, build, core_recipes, johnson_bound, subgroup_budget, theorem_bound, CoreRecipe, HandleChainModel, Variant,
};
use torelli_core::catalog::build_catalog;
use torelli_core::FreeAutomorphism;

#[test]
fn budgets_fit_theorem_bound() {
    for g in 3..=12 {
        let m = HandleChainModel::new(g).unwrap();
        let triples = m.triples();
        assert_eq!(triples.len() as u64, (g * (g - 1) * (g - 2) / 6) as u64);
        let mut total = 0;
        for t in &triples {
            let b = subgroup_budget(t.boundary_count).unwrap();
            assert!(b <= 57);
            assert!(t.boundary_count > 0 || g == 3);
            total += b;
        }
        assert!(total as u64 <= theorem_bound(g, Variant::Closed).unwrap());
    }
}

#[test]
fn johnson_bound_comparison() {
    for g in 5..=64 {
        for v in [Variant::Closed, Variant::OneBoundary] {
            assert!(johnson_bound(g, v).unwrap() > BigInt::from(theorem_bound(g, v).unwrap()), "g = {g}");
        }
    }
    // the comparison does not hold at g = 4
    assert_eq!(johnson_bound(4, Variant::Closed).unwrap(), BigInt::from(226));
    assert_eq!(theorem_bound(4, Variant::Closed).unwrap(), 228);
    assert_eq!(johnson_bound(4, Variant::OneBoundary).unwrap(), BigInt::from(235));
    assert_eq!(theorem_bound(4, Variant::OneBoundary).unwrap(), 237);
}

#[test]
fn generators_are_torelli_up_to_genus_eight() {
    for g in 3..=8 {
        for v in [Variant::Closed, Variant::OneBoundary] {
            let s = build(g, v).unwrap();
            let c = s.check(true);
            assert!(c.passed(), "g = {g}: {:?}", c.failures);
            assert!(s.total() as u64 <= s.bound);
            assert!(c.materialized > 0);
        }
    }
}

#[test]
fn build_is_deterministic() {
    let a = serde_json::to_string(&build(5, Variant::OneBoundary).unwrap().to_json(true)).unwrap();
    let b = serde_json::to_string(&build(5, Variant::OneBoundary).unwrap().to_json(true)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn large_genus_counts_without_materialization() {
    let s = build(12, Variant::Closed).unwrap();
    assert!(s.descriptors.iter().all(|d| d.automorphism.is_none()));
    assert!(s.check(false).passed());
    assert!(s.total() as u64 <= s.bound);
}

#[test]
fn core_family_is_distinct_in_genus_three() {
    let cat = build_catalog(3).unwrap();
    let autos: Vec<FreeAutomorphism> = core_recipes()
        .iter()
        .map(|r| match r {
            CoreRecipe::Bp(bp) => bp.materialize(&cat).unwrap(),
            CoreRecipe::Sep(s) => cat.separating_twist(s).unwrap(),
        })
        .collect();
    assert_eq!(autos.len(), 35);
    for i in 0..autos.len() {
        assert!(!autos[i].is_identity());
        for j in i + 1..autos.len() {
            assert!(autos[i] != autos[j] && autos[i] != autos[j].inverse(), "{i} {j}");
        }
    }
}

fn triple(g: usize) -> impl Strategy<Value = [usize; 3]> {
    prop::sample::subsequence((1..=g).collect::<Vec<_>>(), 3).prop_map(|v| [v[0], v[1], v[2]])
}

proptest! {
    #[test]
    fn boundary_count_symmetries((g, t) in (3usize..=12).prop_flat_map(|g| (Just(g), triple(g)))) {
        let b = boundary_count(g, t).unwrap();
        prop_assert!(b <= 3);
        let rot = t.map(|i| i % g + 1);
        prop_assert_eq!(boundary_count(g, rot).unwrap(), b);
        let refl = t.map(|i| g + 1 - i);
        prop_assert_eq!(boundary_count(g, refl).unwrap(), b);
    }
}
