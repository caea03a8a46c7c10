use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torelli_core::catalog::build_catalog;
use torelli_core::handle_graph::{
    build_instance_by_name, closure, connectivity, grafting_solve, klein_four_model, random_grafting_instance,
    random_models, serre_generators, GroupActionModel, Label,
};

#[test]
fn default_instances_connected() {
    for g in 3..=4 {
        let cat = build_catalog(g).unwrap();
        for i in 1..=g {
            let inst = build_instance_by_name(&cat, &format!("alpha_{i}"), &format!("beta_{i}")).unwrap();
            let c = connectivity(&inst);
            assert!(c.is_connected(), "g = {g}, handle {i}");
            for p in &c.certificates {
                assert!(inst.verify_certificate(p));
                let labels: Vec<Label> = p.vertices.iter().map(|&v| inst.vertices[v].label).collect();
                assert!(labels.windows(2).all(|w| w[0] != w[1]));
            }
            for &(u, v) in &inst.edges {
                assert_eq!(cat.intersection(&inst.vertices[u].curve, &inst.vertices[v].curve).unwrap(), 1);
                assert_ne!(inst.vertices[u].label, inst.vertices[v].label);
            }
        }
    }
}

#[test]
fn klein_four_closure() {
    let m = klein_four_model();
    assert_eq!(closure(4, &m.generators).len(), 4);
    let r = serre_generators(&m, (1, 3)).unwrap();
    assert_eq!(closure(4, &r.generators).len(), 4);
}

#[test]
fn fifty_random_models() {
    for (k, m) in random_models(42, 50).iter().enumerate() {
        let r = serre_generators(m, m.edges[0]).unwrap_or_else(|e| panic!("model {k}: {e}"));
        assert!(r.generators.len() <= r.stabilizer_v.len() + r.stabilizer_w.len());
        assert_eq!(closure(m.vertices, &r.generators).len(), m.group().len());
        for s in &r.stabilizer_v {
            assert_eq!(s[m.edges[0].0], m.edges[0].0);
        }
    }
}

#[test]
fn wrong_quotient_rejected() {
    // a 4-cycle under the trivial group has four vertex orbits
    let m = GroupActionModel { vertices: 4, generators: vec![], edges: vec![(0, 1), (1, 2), (2, 3), (3, 0)] };
    assert!(serre_generators(&m, (0, 1)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn grafting_round_trip(seed in any::<u64>(), g in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (bp, target, s1, s2) = random_grafting_instance(&mut rng, g);
        let (h1, h2) = grafting_solve(&bp, &target, &s1, &s2).unwrap();
        prop_assert_eq!(bp.add(&h1).add(&h2), target);
    }
}
