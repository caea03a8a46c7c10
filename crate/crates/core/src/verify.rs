//! Deterministic check suites, one per acceptance criterion. Reports contain no
//! timings, so equal inputs give byte-identical JSON.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{build_catalog, validate_catalog, Catalog};
use crate::commutator::{exceptional_set, freeness_counterexample, rewrite, verify_case_box, OrderedBasisContext};
use crate::genset::{build, johnson_bound, subgroup_budget, theorem_bound, Variant, disc_pushing_rank};
use crate::handle_graph::{
    build_instance_by_name, connectivity, grafting_solve, klein_four_model, random_grafting_instance, random_models,
    serre_generators,
};
use crate::johnson::{curated_family, defect_is_zero, lambda2, lambda3_dim, tau, tau_span_rank, Lambda2Element};
use crate::stallings::SubgroupGraph;
use crate::word::{FreeAutomorphism, Letter, Word};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub criterion: u32,
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl CheckResult {
    fn new(criterion: u32, name: &str, failures: &[String], detail: Value) -> Self {
        let mut detail = detail;
        if let Value::Object(m) = &mut detail {
            m.insert("failures".into(), json!(failures.iter().take(20).collect::<Vec<_>>()));
            m.insert("failure_count".into(), json!(failures.len()));
        }
        CheckResult { criterion, name: name.into(), passed: failures.is_empty(), detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub genus: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| {
        let x = rng.gen_range(1..=rank) as Letter;
        if rng.gen_bool(0.5) {
            x
        } else {
            -x
        }
    }))
}

/// u · σ(u)⁻¹ for a random letter permutation σ: zero abelianization, length ≤ max_len.
pub fn random_commutator_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Word {
    let u = random_word(rng, rank, max_len / 2);
    let mut ls = u.letters().to_vec();
    ls.shuffle(rng);
    u.mul(&Word::from_letters(ls).inverse())
}

/// 1. theorem bounds for g = 3..=20, the lift, and the g = 20 comparison value.
pub fn check_counts() -> CheckResult {
    let mut fails = Vec::new();
    let closed: Vec<u64> = (3..=20).map(|g| theorem_bound(g, Variant::Closed).unwrap()).collect();
    for (k, g) in (3..=20).enumerate() {
        let c3 = (g * (g - 1) * (g - 2) / 6) as u64;
        if closed[k] != 57 * c3 {
            fails.push(format!("theorem_bound({g}) = {}", closed[k]));
        }
        if theorem_bound(g, Variant::OneBoundary).unwrap() != closed[k] + 2 * g as u64 + 1 {
            fails.push(format!("one-boundary bound at g = {g}"));
        }
    }
    if closed[0] != 57 || closed[17] != 64980 {
        fails.push("57 / 64980 not reproduced".into());
    }
    let j20 = johnson_bound(20, Variant::Closed).unwrap();
    if j20 <= BigInt::from(10u64.pow(12)) {
        fails.push(format!("johnson_bound(20) = {j20} is not above one trillion"));
    }
    for g in 5..=64 {
        for v in [Variant::Closed, Variant::OneBoundary] {
            if johnson_bound(g, v).unwrap() <= BigInt::from(theorem_bound(g, v).unwrap()) {
                fails.push(format!("johnson_bound ≤ theorem_bound at g = {g}"));
            }
        }
    }
    CheckResult::new(
        1,
        "count reproduction",
        &fails,
        json!({"theorem_bound_g3": closed[0], "theorem_bound_g20": closed[17], "johnson_bound_g20": j20.to_string()}),
    )
}

/// 2. budgets and their disc-pushing increments.
pub fn check_budgets() -> CheckResult {
    let b: Vec<usize> = (0..4).map(|b| subgroup_budget(b).unwrap()).collect();
    let inc: Vec<usize> = b.windows(2).map(|w| w[1] - w[0]).collect();
    let ranks: Vec<usize> = (0..3).map(disc_pushing_rank).collect();
    let mut fails = Vec::new();
    if b != [35, 42, 49, 57] {
        fails.push(format!("budgets {b:?}"));
    }
    if inc != [7, 7, 8] || inc != ranks {
        fails.push(format!("increments {inc:?} vs disc-pushing ranks {ranks:?}"));
    }
    CheckResult::new(2, "budget chain", &fails, json!({"budgets": b, "increments": inc}))
}

/// 3. every descriptor acts trivially on homology, every automorphism abelianizes to 1.
pub fn check_torelli(genera: &[usize]) -> CheckResult {
    let mut fails = Vec::new();
    let mut rows = Vec::new();
    for &g in genera {
        for v in [Variant::Closed, Variant::OneBoundary] {
            match build(g, v) {
                Ok(s) => {
                    let c = s.check(true);
                    if s.total() as u64 > s.bound {
                        fails.push(format!("g = {g} {v:?}: total {} exceeds bound {}", s.total(), s.bound));
                    }
                    fails.extend(c.failures.iter().map(|f| format!("g = {g} {v:?}: {f}")));
                    rows.push(json!({"genus": g, "variant": v, "total": s.total(), "bound": s.bound, "materialized": c.materialized}));
                }
                Err(e) => fails.push(format!("g = {g}: {e}")),
            }
        }
    }
    CheckResult::new(3, "torelli membership", &fails, json!({"sets": rows}))
}

/// 4. catalog validation.
pub fn check_catalogs(genera: &[usize]) -> CheckResult {
    let mut fails = Vec::new();
    let mut rows = Vec::new();
    for &g in genera {
        match build_catalog(g) {
            Ok(cat) => {
                let r = validate_catalog(&cat);
                fails.extend(r.all_failures().into_iter().map(|f| format!("g = {g}: {f}")));
                rows.push(json!({"genus": g, "curves": r.curves, "twists": r.twist_reports.len()}));
            }
            Err(e) => fails.push(format!("g = {g}: {e}")),
        }
    }
    CheckResult::new(4, "twist catalog validation", &fails, json!({"catalogs": rows}))
}

fn random_catalog_bp(rng: &mut ChaCha8Rng, cat: &Catalog, bps: &[(String, String)]) -> FreeAutomorphism {
    let (a, b) = &bps[rng.gen_range(0..bps.len())];
    let f = cat.bounding_pair(a, b).unwrap();
    if rng.gen_bool(0.5) {
        f
    } else {
        f.inverse()
    }
}

/// 5. λ and τ properties, plus curated span ranks for the listed genera.
pub fn check_johnson(seed: u64, genus: usize, curated: &[usize]) -> CheckResult {
    let n = 2 * genus;
    let mut fails = Vec::new();
    let mut r = rng(seed, 5);
    let a = Word::letter(1);
    let b = Word::letter(2);
    if lambda2(&Word::commutator(&a, &b), n).ok() != Some(Lambda2Element::wedge(n, 0, 1)) {
        fails.push("λ([a,b]) ≠ a∧b".into());
    }
    for _ in 0..500 {
        let u = random_commutator_word(&mut r, n, 40);
        let v = random_commutator_word(&mut r, n, 40);
        let g = random_word(&mut r, n, 12);
        let (lu, lv) = (lambda2(&u, n), lambda2(&v, n));
        match (lu, lv, lambda2(&u.mul(&v), n), lambda2(&u.conjugate(&g), n)) {
            (Ok(lu), Ok(lv), Ok(luv), Ok(lc)) => {
                if luv != lu.add(&lv) {
                    fails.push(format!("λ not additive on {u}, {v}"));
                }
                if lc != lu {
                    fails.push(format!("λ not conjugation invariant on {u}, {g}"));
                }
            }
            _ => fails.push(format!("λ failed on {u} or {v}")),
        }
    }
    for _ in 0..1000 {
        let w = random_commutator_word(&mut r, n, 40);
        if lambda2(&w, n).is_err() {
            fails.push(format!("parity assertion fired on {w}"));
        }
    }
    let cat = build_catalog(genus).unwrap();
    let bps = cat.bounding_pairs();
    let mut defect_checked = 0;
    for _ in 0..200 {
        let f = random_catalog_bp(&mut r, &cat, &bps);
        let h = random_catalog_bp(&mut r, &cat, &bps);
        let (tf, th, tfh) = (tau(&f), tau(&h), tau(&FreeAutomorphism::compose(&f, &h)));
        match (tf, th, tfh) {
            (Ok(tf), Ok(th), Ok(tfh)) => {
                if tfh != tf.add(&th) {
                    fails.push("τ not additive".into());
                }
                for t in [&tf, &th, &tfh] {
                    defect_checked += 1;
                    if !defect_is_zero(t) {
                        fails.push("nonzero Λ³ defect".into());
                    }
                }
            }
            _ => fails.push("τ rejected a bounding pair".into()),
        }
    }
    for s in cat.separating_curves() {
        match cat.separating_twist(&s).map(|f| tau(&f)) {
            Ok(Ok(t)) if t.is_zero() => {}
            _ => fails.push(format!("τ(T_{s}) ≠ 0")),
        }
    }
    let mut ranks = Vec::new();
    for &g in curated {
        let cat = build_catalog(g).unwrap();
        let fam: Vec<FreeAutomorphism> = curated_family(&cat).unwrap().into_iter().map(|x| x.1).collect();
        for f in &fam {
            defect_checked += 1;
            if !tau(f).map(|t| defect_is_zero(&t)).unwrap_or(false) {
                fails.push(format!("curated genus-{g} element has nonzero defect"));
            }
        }
        let rank = tau_span_rank(&fam).unwrap_or(0);
        if rank != lambda3_dim(g) {
            fails.push(format!("curated genus-{g} rank {rank} ≠ {}", lambda3_dim(g)));
        }
        ranks.push(json!({"genus": g, "family": fam.len(), "rank": rank, "lambda3_dim": lambda3_dim(g)}));
    }
    CheckResult::new(
        5,
        "johnson suite",
        &fails,
        json!({"genus": genus, "defects_checked": defect_checked, "curated": ranks,
               "note": "span ranks are necessary-condition certificates"}),
    )
}

/// 6. rewriter round trips, freeness search and the exceptional partition.
pub fn check_rewriter(seed: u64, exceptional_genus: usize) -> CheckResult {
    let mut fails = Vec::new();
    let mut r = rng(seed, 6);
    let mut total_len = 0;
    for _ in 0..1000 {
        let n = r.gen_range(2..=6);
        let w = random_commutator_word(&mut r, n, 40);
        let ctx = OrderedBasisContext::standard(n);
        match rewrite(&w, &ctx) {
            Ok(f) if f.product(&ctx) == w => total_len += f.len(),
            _ => fails.push(format!("round trip failed for {w} in rank {n}")),
        }
    }
    let free = freeness_counterexample(3, 1, 3);
    if let Some(c) = &free {
        fails.push(format!("relation among basis elements: {c:?}"));
    }
    let ctx = OrderedBasisContext::handle_two_first(exceptional_genus);
    let p = exceptional_set(&ctx, 1);
    for e in &p.regular_outside_k2 {
        fails.push(format!("non-exceptional element {e} is outside K2"));
    }
    CheckResult::new(
        6,
        "tomaszewski rewriter",
        &fails,
        json!({"round_trips": 1000, "factor_total": total_len, "freeness_relation": free.is_some(),
               "exceptional": p.exceptional.len(), "regular": p.regular.len(),
               "exceptional_in_k2": p.exceptional_in_k2}),
    )
}

/// 7. case identities on the exhaustive box.
pub fn check_cases(genera: &[usize], bound: i64) -> CheckResult {
    let mut fails = Vec::new();
    let mut rows = Vec::new();
    for &g in genera {
        let r = verify_case_box(g, bound);
        fails.extend(r.failures.iter().cloned());
        rows.push(json!({"genus": g, "bound": bound, "case1": r.case1_checked, "case2": r.case2_checked}));
    }
    CheckResult::new(7, "case identities", &fails, json!({"boxes": rows}))
}

/// All reduced products of at most `depth` generators and their inverses.
pub fn brute_subgroup_elements(gens: &[Word], depth: usize) -> BTreeSet<Word> {
    let mut all: Vec<Word> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    all.retain(|w| !w.is_empty());
    let mut seen = BTreeSet::from([Word::identity()]);
    let mut frontier = vec![Word::identity()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &frontier {
            for s in &all {
                let x = w.mul(s);
                if seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    seen
}

type Perm = Vec<u8>;

fn perm_of_word(images: &[Perm], w: &Word) -> Perm {
    let n = images[0].len();
    let mut p: Perm = (0..n as u8).collect();
    for &l in w.letters() {
        let s = &images[l.unsigned_abs() as usize - 1];
        if l > 0 {
            p = p.iter().map(|&x| s[x as usize]).collect();
        } else {
            let mut inv = vec![0u8; n];
            for (i, &y) in s.iter().enumerate() {
                inv[y as usize] = i as u8;
            }
            p = p.iter().map(|&x| inv[x as usize]).collect();
        }
    }
    p
}

/// Some homomorphism into S_4 or S_5 sends w outside the image of H.
fn quotient_separates(r: &mut ChaCha8Rng, rank: usize, gens: &[Word], w: &Word, tries: usize) -> bool {
    for t in 0..tries {
        let n = 4 + t % 2;
        let images: Vec<Perm> = (0..rank)
            .map(|_| {
                let mut p: Perm = (0..n as u8).collect();
                p.shuffle(r);
                p
            })
            .collect();
        let hs: Vec<Perm> = gens.iter().map(|g| perm_of_word(&images, g)).collect();
        let mut seen: BTreeSet<Perm> = BTreeSet::from([(0..n as u8).collect()]);
        let mut stack: Vec<Perm> = seen.iter().cloned().collect();
        while let Some(p) = stack.pop() {
            for h in &hs {
                let q: Perm = p.iter().map(|&x| h[x as usize]).collect();
                if seen.insert(q.clone()) {
                    stack.push(q);
                }
            }
        }
        if !seen.contains(&perm_of_word(&images, w)) {
            return true;
        }
    }
    false
}

/// Most queries a bounded oracle may leave undecided.
pub const STALLINGS_UNDECIDED_MAX: usize = 10;

/// 8. Stallings membership against two independent certificates: enumeration of
/// short generator products proves membership, a finite permutation quotient
/// proves non-membership. Queries neither settles are counted as undecided.
pub fn check_stallings(seed: u64) -> CheckResult {
    let mut fails = Vec::new();
    let mut r = rng(seed, 8);
    let mut q_rng = rng(seed, 80);
    let (mut members, mut non_members, mut undecided) = (0, 0, 0);
    for q in 0..200 {
        let rank = r.gen_range(2..=3);
        let k = r.gen_range(1..=3);
        let gens: Vec<Word> = (0..k).map(|_| random_word(&mut r, rank, 4)).collect();
        let h = SubgroupGraph::from_generators(rank, &gens);
        let w = if q % 2 == 0 {
            // a product of generators, so a member
            let m = r.gen_range(0..=6);
            let mut w = Word::identity();
            for _ in 0..m {
                let g = &gens[r.gen_range(0..k)];
                w = w.mul(&if r.gen_bool(0.5) { g.clone() } else { g.inverse() });
            }
            w
        } else {
            random_word(&mut r, rank, 4)
        };
        let want = if brute_subgroup_elements(&gens, 6).contains(&w) {
            members += 1;
            Some(true)
        } else if quotient_separates(&mut q_rng, rank, &gens, &w, 60) {
            non_members += 1;
            Some(false)
        } else {
            undecided += 1;
            None
        };
        let got = h.contains(&w);
        if want.is_some_and(|v| v != got) {
            fails.push(format!("H = <{}>, w = {w}: stallings {got}, oracle {want:?}",
                gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")));
        }
    }
    if undecided > STALLINGS_UNDECIDED_MAX {
        fails.push(format!("{undecided} undecided queries exceed {STALLINGS_UNDECIDED_MAX}"));
    }
    CheckResult::new(8, "stallings membership", &fails,
                     json!({"queries": 200, "members": members, "non_members": non_members, "undecided": undecided}))
}

/// 9. handle-graph instances, Serre harness and grafting round trips.
pub fn check_handle_graph(seed: u64, genera: &[usize]) -> CheckResult {
    let mut fails = Vec::new();
    let mut inst_rows = Vec::new();
    for &g in genera {
        let cat = build_catalog(g).unwrap();
        for i in 1..=g {
            let (a, b) = (format!("alpha_{i}"), format!("beta_{i}"));
            match build_instance_by_name(&cat, &a, &b) {
                Ok(inst) => {
                    let c = connectivity(&inst);
                    if !c.is_connected() {
                        fails.push(format!("H({a},{b}) in genus {g} is disconnected"));
                    }
                    for p in &c.certificates {
                        if !inst.verify_certificate(p) {
                            fails.push(format!("bad certificate {:?}", p.vertices));
                        }
                    }
                    inst_rows.push(json!({"genus": g, "a": a, "b": b, "vertices": inst.vertices.len(),
                                          "edges": inst.edges.len(), "certificates": c.certificates.len()}));
                }
                Err(e) => fails.push(format!("{e}")),
            }
        }
    }
    let mut orders = Vec::new();
    let klein = klein_four_model();
    match serre_generators(&klein, (0, 2)) {
        Ok(rep) => orders.push(rep.group_order),
        Err(e) => fails.push(format!("klein four: {e}")),
    }
    for (k, m) in random_models(seed, 50).iter().enumerate() {
        let e = m.edges[0];
        match serre_generators(m, e) {
            Ok(rep) => orders.push(rep.group_order),
            Err(err) => fails.push(format!("random model {k}: {err}")),
        }
    }
    let mut r = rng(seed, 9);
    for k in 0..100 {
        let g = r.gen_range(2..=4);
        let (bp, target, s1, s2) = random_grafting_instance(&mut r, g);
        match grafting_solve(&bp, &target, &s1, &s2) {
            Ok((h1, h2)) if bp.add(&h1).add(&h2) == target => {}
            _ => fails.push(format!("grafting instance {k} failed")),
        }
    }
    CheckResult::new(
        9,
        "handle graph and serre",
        &fails,
        json!({"instances": inst_rows, "group_orders": orders, "grafting": 100}),
    )
}

/// Every suite for one genus. The case box runs at `case_bound`.
pub fn run_suite(genus: usize, seed: u64, case_bound: i64) -> SuiteReport {
    let small: Vec<usize> = vec![genus];
    let curated: Vec<usize> = [3, 4].into_iter().filter(|&g| g == genus).collect();
    let cases: Vec<usize> = if genus >= 3 { vec![genus] } else { vec![] };
    let checks = vec![
        check_counts(),
        check_budgets(),
        check_torelli(&small),
        check_catalogs(&small),
        check_johnson(seed, genus, &curated),
        check_rewriter(seed, genus.clamp(2, 3)),
        check_cases(&cases, case_bound),
        check_stallings(seed),
        check_handle_graph(seed, &small),
    ];
    SuiteReport { genus, seed, passed: checks.iter().all(|c| c.passed), checks }
}
