//! Counting formulas and the explicit generating set supported on the
//! subsurfaces R_ijk, together with the one-boundary lift.
//!
//! Every descriptor carries its homology action as a product of signed
//! transvections; descriptors whose curves all live in the catalog and inside
//! the triple are also materialized as automorphisms of π₁(Σ_{g,1}).
//! Nothing here certifies that the emitted set generates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{abelianized_matrix, build_catalog, partner_handle, Catalog, CatalogError};
use crate::homology::IntegerMatrix;
use crate::johnson::{family, BpRecipe, JohnsonError};
use crate::word::FreeAutomorphism;

pub const CLAIM: &str = "necessary conditions only: every descriptor acts trivially on homology; \
generation of the Torelli group by this set is not verified";

#[derive(Debug, Error)]
pub enum GensetError {
    #[error("genus {0} is below 3")]
    GenusTooSmall(usize),
    #[error("invalid triple {0:?} for genus {1}")]
    BadTriple([usize; 3], usize),
    #[error("boundary count {0} out of range")]
    BoundaryCount(usize),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Johnson(#[from] JohnsonError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Closed,
    OneBoundary,
}

/// Handles 1..=g arranged in a cycle; R_i′ meets R_{i±1}′ in an interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandleChainModel {
    pub genus: usize,
}

impl HandleChainModel {
    pub fn new(genus: usize) -> Result<Self, GensetError> {
        if genus < 3 {
            return Err(GensetError::GenusTooSmall(genus));
        }
        Ok(HandleChainModel { genus })
    }

    /// R_i′ ∩ R_j′ ≠ ∅ exactly for cyclic neighbours.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let g = self.genus;
        i != j && ((i % g) + 1 == j || (j % g) + 1 == i)
    }

    /// Handles of S_i = closure(Σ_g ∖ R_i′).
    pub fn complement(&self, i: usize) -> Vec<usize> {
        (1..=self.genus).filter(|&h| h != i).collect()
    }

    pub fn triples(&self) -> Vec<SubsurfaceTriple> {
        let g = self.genus;
        let mut out = Vec::new();
        for i in 1..=g {
            for j in i + 1..=g {
                for k in j + 1..=g {
                    out.push(SubsurfaceTriple { handles: [i, j, k], boundary_count: boundary_count(g, [i, j, k]).unwrap() });
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubsurfaceTriple {
    pub handles: [usize; 3],
    pub boundary_count: usize,
}

impl SubsurfaceTriple {
    pub fn is_consecutive(&self) -> bool {
        let [i, j, k] = self.handles;
        j == i + 1 && k == j + 1
    }
}

/// Number of maximal cyclic runs of handles not in the triple.
pub fn boundary_count(g: usize, t: [usize; 3]) -> Result<usize, GensetError> {
    let mut s = t;
    s.sort_unstable();
    if g < 3 || s[0] == 0 || s[2] > g || s[0] == s[1] || s[1] == s[2] {
        return Err(GensetError::BadTriple(t, g));
    }
    let removed = |h: usize| !s.contains(&h);
    Ok((1..=g).filter(|&h| removed(h) && !removed(if h == 1 { g } else { h - 1 })).count())
}

fn binom3(g: usize) -> u64 {
    let g = g as u64;
    g * (g - 1) * (g - 2) / 6
}

pub fn theorem_bound(g: usize, v: Variant) -> Result<u64, GensetError> {
    if g < 3 {
        return Err(GensetError::GenusTooSmall(g));
    }
    let base = 57 * binom3(g);
    Ok(match v {
        Variant::Closed => base,
        Variant::OneBoundary => base + 2 * g as u64 + 1,
    })
}

/// 9·2^{2g−3} − 4g² + 2g − 6, resp. 9·2^{2g−3} − 4g² + 4g − 5.
pub fn johnson_bound(g: usize, v: Variant) -> Result<BigInt, GensetError> {
    if g < 3 {
        return Err(GensetError::GenusTooSmall(g));
    }
    let gg = BigInt::from(g);
    let pow: BigInt = BigInt::one() << (2 * g - 3);
    let head = BigInt::from(9) * pow - BigInt::from(4) * &gg * &gg;
    Ok(match v {
        Variant::Closed => head + BigInt::from(2) * gg - 6,
        Variant::OneBoundary => head + BigInt::from(4) * gg - 5,
    })
}

/// Generators of π₁ of the unit tangent bundle of a genus-3 surface with n
/// boundary components: 2g+1 when n = 0 and 2g+n otherwise.
pub fn disc_pushing_rank(n: usize) -> usize {
    6 + n.max(1)
}

/// 35 for Torelli(Σ₃), then one disc-pushing step per boundary component.
pub fn subgroup_budget(b: usize) -> Result<usize, GensetError> {
    if b > 3 {
        return Err(GensetError::BoundaryCount(b));
    }
    Ok(35 + (0..b).map(disc_pushing_rank).sum::<usize>())
}

/// Eleven more conjugated bounding pairs completing the genus-3 candidate list.
pub const GENUS_3_EXTRA: &[&str] = &[
    "alpha_1/alphap_1 @ beta_1",
    "alpha_1/alphap_1 @ beta_1^-1",
    "alpha_1/alphap_1 @ gamma_2^-1",
    "beta_1/betap_1 @ alpha_1",
    "beta_1/betap_1 @ gamma_1^-1",
    "beta_1/betap_1 @ gamma_2^-1",
    "alpha_2/alphap_2 @ beta_2",
    "alpha_2/alphap_2 @ beta_2^-1",
    "beta_2/betap_2 @ alpha_2",
    "beta_2/betap_2 @ gamma_1^-1",
    "beta_2/betap_2 @ gamma_2",
];

pub const GENUS_3_SEPARATING: &[&str] = &["sep_1", "sep_2", "sep_3", "sepk_2"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoreRecipe {
    Bp(BpRecipe),
    Sep(String),
}

/// The pluggable "core 35" candidate list on Σ₃.
pub fn core_recipes() -> Vec<CoreRecipe> {
    let mut out: Vec<CoreRecipe> = family::GENUS_3.iter().map(|s| CoreRecipe::Bp(BpRecipe::parse(s).unwrap())).collect();
    out.extend(GENUS_3_SEPARATING.iter().map(|s| CoreRecipe::Sep(s.to_string())));
    out.extend(GENUS_3_EXTRA.iter().map(|s| CoreRecipe::Bp(BpRecipe::parse(s).unwrap())));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    BoundingPair,
    SeparatingTwist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Core,
    DiscPush,
    Lift,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorDescriptor {
    pub kind: GeneratorKind,
    pub origin: Origin,
    pub support: Vec<usize>,
    pub curves: Vec<String>,
    /// Homology action as T_{c_1}^{e_1} ∘ ⋯ ∘ T_{c_r}^{e_r}.
    #[serde(skip)]
    pub transvections: Vec<(Vec<i64>, i8)>,
    #[serde(skip)]
    pub automorphism: Option<FreeAutomorphism>,
}

fn pair(x: &[i64], y: &[i64]) -> i64 {
    (0..x.len() / 2).map(|h| x[2 * h] * y[2 * h + 1] - x[2 * h + 1] * y[2 * h]).sum()
}

impl GeneratorDescriptor {
    pub fn dim(&self) -> usize {
        self.transvections.first().map_or(0, |t| t.0.len())
    }

    fn act(&self, mut x: Vec<i64>) -> Vec<i64> {
        for (c, e) in self.transvections.iter().rev() {
            let k = pair(&x, c) * *e as i64;
            for (xi, ci) in x.iter_mut().zip(c) {
                *xi += k * ci;
            }
        }
        x
    }

    /// Column k is the image of the k-th basis class.
    pub fn homology_matrix_i64(&self, n: usize) -> Vec<Vec<i64>> {
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|k| {
                let mut e = vec![0; n];
                e[k] = 1;
                self.act(e)
            })
            .collect();
        (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect()
    }

    pub fn homology_matrix(&self, n: usize) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(&self.homology_matrix_i64(n))
    }

    pub fn acts_trivially(&self, n: usize) -> bool {
        (0..n).all(|k| {
            let mut e = vec![0; n];
            e[k] = 1;
            self.act(e.clone()) == e
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleCount {
    pub support: [usize; 3],
    pub boundary_count: usize,
    pub budget: usize,
    pub emitted: usize,
}

#[derive(Clone, Debug)]
pub struct GeneratingSet {
    pub genus: usize,
    pub variant: Variant,
    pub bound: u64,
    pub triples: Vec<TripleCount>,
    pub descriptors: Vec<GeneratorDescriptor>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GensetCheck {
    pub descriptors: usize,
    pub materialized: usize,
    pub failures: Vec<String>,
}

impl GensetCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl GeneratingSet {
    pub fn total(&self) -> usize {
        self.descriptors.len()
    }

    /// Identity homology for every descriptor, by exact IntegerMatrix when
    /// `exact` is set; materialized automorphisms must abelianize to the identity.
    pub fn check(&self, exact: bool) -> GensetCheck {
        let n = 2 * self.genus;
        let fails: Vec<Option<String>> = self
            .descriptors
            .par_iter()
            .enumerate()
            .map(|(k, d)| {
                let ok = if exact {
                    crate::homology::is_torelli(&d.homology_matrix(n)).unwrap_or(false)
                } else {
                    d.acts_trivially(n)
                };
                if !ok {
                    return Some(format!("descriptor {k} {:?} acts nontrivially on homology", d.curves));
                }
                if let Some(f) = &d.automorphism {
                    if f.certify().is_err() || !abelianized_matrix(f).is_identity() {
                        return Some(format!("descriptor {k} {:?}: automorphism is not Torelli", d.curves));
                    }
                }
                None
            })
            .collect();
        GensetCheck {
            descriptors: self.descriptors.len(),
            materialized: self.descriptors.iter().filter(|d| d.automorphism.is_some()).count(),
            failures: fails.into_iter().flatten().collect(),
        }
    }

    pub fn to_json(&self, include_matrices: bool) -> serde_json::Value {
        let n = 2 * self.genus;
        let gens: Vec<serde_json::Value> = self
            .descriptors
            .iter()
            .map(|d| {
                let mut v = serde_json::to_value(d).unwrap();
                let obj = v.as_object_mut().unwrap();
                if include_matrices {
                    obj.insert("matrix".into(), serde_json::to_value(d.homology_matrix_i64(n)).unwrap());
                }
                if let Some(f) = &d.automorphism {
                    let imgs: Vec<String> = f.forward().iter().map(|w| w.to_string()).collect();
                    obj.insert("automorphism".into(), serde_json::to_value(imgs).unwrap());
                }
                v
            })
            .collect();
        serde_json::json!({
            "genus": self.genus,
            "variant": self.variant,
            "bound": self.bound,
            "total": self.total(),
            "claim": CLAIM,
            "triples": self.triples,
            "generators": gens,
        })
    }
}

/// Curve supports on the handle chain; partner curves span {i, p(i)}.
pub fn curve_support(g: usize, name: &str) -> Option<Vec<usize>> {
    if name == "delta" {
        return Some((1..=g).collect());
    }
    let (kind, idx) = name.rsplit_once('_')?;
    let i: usize = idx.parse().ok()?;
    let mut s = match kind {
        "alpha" | "beta" | "sep" => vec![i],
        "gamma" => vec![i, i + 1],
        "alphap" | "betap" => vec![i, partner_handle(g, i)],
        "sepk" => (1..=i).collect(),
        _ => return None,
    };
    s.sort_unstable();
    Some(s)
}

fn shift_name(name: &str, by: usize) -> String {
    match name.rsplit_once('_') {
        Some((kind, idx)) => format!("{kind}_{}", idx.parse::<usize>().unwrap() + by),
        None => name.to_string(),
    }
}

/// Embeds a genus-3 class into genus g with handle h ↦ triple[h-1].
fn relabel(v: &[i64], triple: [usize; 3], g: usize) -> Vec<i64> {
    let mut out = vec![0; 2 * g];
    for (h, &t) in triple.iter().enumerate() {
        out[2 * (t - 1)] = v[2 * h];
        out[2 * (t - 1) + 1] = v[2 * h + 1];
    }
    out
}

struct Genus3 {
    classes: BTreeMap<String, Vec<i64>>,
}

impl Genus3 {
    fn new() -> Result<Self, GensetError> {
        let cat = build_catalog(3)?;
        let classes = cat.curves.iter().map(|c| (c.name.clone(), c.homology.to_i64())).collect();
        Ok(Genus3 { classes })
    }

    fn class(&self, name: &str) -> Vec<i64> {
        self.classes[name].clone()
    }
}

/// h ∘ X ∘ h⁻¹ as transvection factors, h given by (class, sign) factors.
fn conjugated(h: &[(Vec<i64>, i8)], x: Vec<(Vec<i64>, i8)>) -> Vec<(Vec<i64>, i8)> {
    let mut out: Vec<(Vec<i64>, i8)> = h.to_vec();
    out.extend(x);
    out.extend(h.iter().rev().map(|(c, e)| (c.clone(), -e)));
    out
}

fn core_descriptor(
    r: &CoreRecipe,
    t: &SubsurfaceTriple,
    g: usize,
    g3: &Genus3,
    cat: Option<&Catalog>,
) -> Result<GeneratorDescriptor, GensetError> {
    let rl = |name: &str| relabel(&g3.class(name), t.handles, g);
    let (kind, names, trans) = match r {
        CoreRecipe::Bp(bp) => {
            let h: Vec<(Vec<i64>, i8)> = bp.conjugator.iter().map(|(n, e)| (rl(n), *e)).collect();
            let x = vec![(rl(&bp.curves.0), 1), (rl(&bp.curves.1), -1)];
            let mut names = vec![bp.curves.0.clone(), bp.curves.1.clone()];
            names.extend(bp.conjugator.iter().map(|(n, _)| n.clone()));
            (GeneratorKind::BoundingPair, names, conjugated(&h, x))
        }
        CoreRecipe::Sep(s) => (GeneratorKind::SeparatingTwist, vec![s.clone()], vec![(rl(s), 1)]),
    };
    let mut automorphism = None;
    let mut curves: Vec<String> = names.clone();
    if let Some(cat) = cat.filter(|_| t.is_consecutive()) {
        let by = t.handles[0] - 1;
        let shifted: Vec<String> = names.iter().map(|n| shift_name(n, by)).collect();
        let inside = shifted.iter().all(|n| {
            cat.curve(n).is_ok()
                && curve_support(g, n).is_some_and(|s| s.iter().all(|h| t.handles.contains(h)))
        });
        if inside {
            automorphism = Some(match r {
                CoreRecipe::Bp(bp) => {
                    let sb = BpRecipe {
                        curves: (shift_name(&bp.curves.0, by), shift_name(&bp.curves.1, by)),
                        conjugator: bp.conjugator.iter().map(|(n, e)| (shift_name(n, by), *e)).collect(),
                    };
                    sb.materialize(cat)?
                }
                CoreRecipe::Sep(s) => cat.separating_twist(&shift_name(s, by))?,
            });
            curves = shifted;
        }
    }
    if automorphism.is_none() {
        // genus-3 recipe names, read through the triple relabeling
        curves = names.iter().map(|n| format!("R{}{}{}:{n}", t.handles[0], t.handles[1], t.handles[2])).collect();
    }
    Ok(GeneratorDescriptor {
        kind,
        origin: Origin::Core,
        support: t.handles.to_vec(),
        curves,
        transvections: trans,
        automorphism,
    })
}

/// Disc-pushing step `step` (0-based) on a triple: bounding pairs in the classes
/// a_x, b_x of the triple's handles and the separating twists around the
/// newly added boundary component.
fn push_descriptors(t: &SubsurfaceTriple, step: usize, g: usize, cat: Option<&Catalog>) -> Vec<GeneratorDescriptor> {
    let mut out = Vec::new();
    for &x in &t.handles {
        for (c, cp, off) in [("alpha", "alphap", 0), ("beta", "betap", 1)] {
            let mut v = vec![0; 2 * g];
            v[2 * (x - 1) + off] = 1;
            let n1 = format!("{c}_{x}");
            let n2 = format!("{cp}_{x}");
            let materialize = cat.filter(|_| {
                curve_support(g, &n2).is_some_and(|s| s.iter().all(|h| t.handles.contains(h)))
            });
            let automorphism = materialize.and_then(|cat| cat.bounding_pair(&n1, &n2).ok());
            out.push(GeneratorDescriptor {
                kind: GeneratorKind::BoundingPair,
                origin: Origin::DiscPush,
                support: t.handles.to_vec(),
                curves: vec![format!("push{step}:{n1}"), format!("push{step}:{n2}")],
                transvections: vec![(v.clone(), 1), (v, -1)],
                automorphism,
            });
        }
    }
    for s in 0..step.max(1) {
        out.push(GeneratorDescriptor {
            kind: GeneratorKind::SeparatingTwist,
            origin: Origin::DiscPush,
            support: t.handles.to_vec(),
            curves: vec![format!("push{step}:boundary_{s}")],
            transvections: vec![(vec![0; 2 * g], 1)],
            automorphism: None,
        });
    }
    out
}

/// The 2g+1 extra generators of the one-boundary lift.
fn lift_descriptors(g: usize, cat: Option<&Catalog>) -> Vec<GeneratorDescriptor> {
    let mut out = Vec::new();
    for x in 1..=g {
        for (c, cp, off) in [("alpha", "alphap", 0), ("beta", "betap", 1)] {
            let mut v = vec![0; 2 * g];
            v[2 * (x - 1) + off] = 1;
            let (n1, n2) = (format!("{c}_{x}"), format!("{cp}_{x}"));
            out.push(GeneratorDescriptor {
                kind: GeneratorKind::BoundingPair,
                origin: Origin::Lift,
                support: curve_support(g, &n2).unwrap(),
                automorphism: cat.and_then(|cat| cat.bounding_pair(&n1, &n2).ok()),
                curves: vec![n1, n2],
                transvections: vec![(v.clone(), 1), (v, -1)],
            });
        }
    }
    out.push(GeneratorDescriptor {
        kind: GeneratorKind::SeparatingTwist,
        origin: Origin::Lift,
        support: (1..=g).collect(),
        curves: vec!["delta".into()],
        transvections: vec![(vec![0; 2 * g], 1)],
        automorphism: cat.and_then(|cat| cat.separating_twist("delta").ok()),
    });
    out
}

/// Largest genus for which automorphisms are materialized by default.
pub const MATERIALIZE_MAX_GENUS: usize = 8;

pub fn build(g: usize, variant: Variant) -> Result<GeneratingSet, GensetError> {
    let cat = if g <= MATERIALIZE_MAX_GENUS { Some(crate::catalog::load_or_build(g)?) } else { None };
    build_with(g, variant, cat.as_ref())
}

pub fn build_with(g: usize, variant: Variant, cat: Option<&Catalog>) -> Result<GeneratingSet, GensetError> {
    let model = HandleChainModel::new(g)?;
    let bound = theorem_bound(g, variant)?;
    let g3 = Genus3::new()?;
    let recipes = core_recipes();
    let per_triple: Vec<Result<(TripleCount, Vec<GeneratorDescriptor>), GensetError>> = model
        .triples()
        .into_par_iter()
        .map(|t| {
            let mut ds = Vec::new();
            for r in &recipes {
                ds.push(core_descriptor(r, &t, g, &g3, cat)?);
            }
            for step in 0..t.boundary_count {
                ds.extend(push_descriptors(&t, step, g, cat));
            }
            let count = TripleCount {
                support: t.handles,
                boundary_count: t.boundary_count,
                budget: subgroup_budget(t.boundary_count)?,
                emitted: ds.len(),
            };
            Ok((count, ds))
        })
        .collect();
    let mut triples = Vec::new();
    let mut descriptors = Vec::new();
    for r in per_triple {
        let (c, ds) = r?;
        triples.push(c);
        descriptors.extend(ds);
    }
    if variant == Variant::OneBoundary {
        descriptors.extend(lift_descriptors(g, cat));
    }
    Ok(GeneratingSet { genus: g, variant, bound, triples, descriptors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_count_examples() {
        assert_eq!(boundary_count(4, [1, 2, 3]).unwrap(), 1);
        assert_eq!(boundary_count(6, [1, 3, 5]).unwrap(), 3);
        assert_eq!(boundary_count(3, [1, 2, 3]).unwrap(), 0);
        assert_eq!(boundary_count(5, [1, 2, 5]).unwrap(), 1);
        assert!(boundary_count(4, [1, 1, 3]).is_err());
        assert!(boundary_count(4, [1, 2, 5]).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(theorem_bound(20, Variant::Closed).unwrap(), 64980);
        assert_eq!(theorem_bound(3, Variant::Closed).unwrap(), 57);
        assert_eq!(theorem_bound(3, Variant::OneBoundary).unwrap(), 64);
        assert_eq!(johnson_bound(20, Variant::Closed).unwrap(), BigInt::from(1_236_950_579_682u64));
        assert_eq!(johnson_bound(3, Variant::Closed).unwrap(), BigInt::from(36));
        assert!(theorem_bound(2, Variant::Closed).is_err());
    }

    #[test]
    fn budgets() {
        let b: Vec<usize> = (0..4).map(|b| subgroup_budget(b).unwrap()).collect();
        assert_eq!(b, vec![35, 42, 49, 57]);
        assert!(subgroup_budget(4).is_err());
    }

    #[test]
    fn chain_model() {
        let m = HandleChainModel::new(5).unwrap();
        assert!(m.adjacent(5, 1) && m.adjacent(2, 3) && !m.adjacent(1, 3));
        assert_eq!(m.complement(2), vec![1, 3, 4, 5]);
        assert_eq!(m.triples().len(), 10);
    }

    #[test]
    fn genus_three_closed() {
        let s = build(3, Variant::Closed).unwrap();
        assert_eq!(s.total(), 35);
        assert!(s.total() as u64 <= s.bound);
        let c = s.check(true);
        assert!(c.passed(), "{:?}", c.failures);
        assert_eq!(c.materialized, 35);
    }

    #[test]
    fn genus_four_counts() {
        let s = build(4, Variant::Closed).unwrap();
        assert_eq!(s.triples.len(), 4);
        assert!(s.triples.iter().all(|t| t.boundary_count == 1 && t.emitted == 42));
        assert_eq!(s.total(), 168);
        let s = build(4, Variant::OneBoundary).unwrap();
        assert_eq!(s.total(), 168 + 9);
        assert!(s.check(true).passed());
    }
}
