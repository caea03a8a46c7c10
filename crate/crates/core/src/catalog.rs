//! Named curves on the one-boundary surface with their homology classes,
//! free-homotopy words, declared geometric intersection numbers and Dehn twist
//! automorphisms of π = π₁(Σ_{g,1}).
//!
//! Geometric intersection numbers are declared data. Nothing here computes them
//! from words. A declared 0 is checked by commutation of twists, a declared 1 by
//! the braid relation, and a declared value ≥ 2 by the absence of both relations
//! plus parity against the algebraic pairing.
//!
//! Curve conventions (basepoint on the boundary, handles in order 1..g):
//! - `alpha_i`, `beta_i`: the handle curves, words a_i and b_i.
//! - `gamma_i`: chain connector between handles i and i+1, class a_i - a_{i+1},
//!   word b_i⁻¹ a_i b_i a_{i+1}⁻¹.
//! - `sep_i`: boundary of the one-holed torus around handle i, word [a_i,b_i].
//! - `sepk_k`: curve cutting off handles 1..k, word [a_1,b_1]...[a_k,b_k].
//! - `delta`: the boundary-parallel curve.
//! - `alphap_i`, `betap_i`: partners of alpha_i and beta_i, pushed around handle
//!   p(i) = i+1 (or g-1 for i = g). Together with alpha_i (resp. beta_i) they
//!   cobound a genus-one subsurface containing handle p(i).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{pairing, transvection, HomologyClass, IntegerMatrix};
use crate::word::{alpha, beta, boundary_word, handle_commutator, partial_boundary, FreeAutomorphism, Word, WordError};

pub const CATALOG_FORMAT: &str = "torelli-curve-catalog";
pub const CATALOG_VERSION: u32 = 1;
pub const CATALOG_ENV: &str = "TORELLI_CATALOG";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("genus {0} is below the minimum of 2")]
    GenusTooSmall(usize),
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("curves {0} and {1} are not disjoint")]
    NotDisjoint(String, String),
    #[error("curves {0} and {1} are not homologous")]
    NotHomologous(String, String),
    #[error("curve {0} is not separating")]
    NotSeparating(String),
    #[error("no twist record for {0}")]
    MissingTwist(String),
    #[error("catalog file: {0}")]
    Format(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub genus: usize,
    pub boundary: usize,
    pub delta: Word,
}

impl SurfaceModel {
    pub fn one_boundary(genus: usize) -> Self {
        SurfaceModel { genus, boundary: 1, delta: boundary_word(genus) }
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDescriptor {
    pub name: String,
    pub homology: HomologyClass,
    pub pi1_word: Option<Word>,
    pub separating: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRecord {
    pub curve: String,
    pub auto: FreeAutomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTable {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    values: Vec<Vec<u32>>,
}

impl IntersectionTable {
    pub fn new(names: Vec<String>) -> Self {
        let n = names.len();
        let index = names.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        IntersectionTable { names, index, values: vec![vec![0; n]; n] }
    }

    pub fn set(&mut self, a: &str, b: &str, v: u32) -> Result<(), CatalogError> {
        let i = *self.index.get(a).ok_or_else(|| CatalogError::UnknownCurve(a.into()))?;
        let j = *self.index.get(b).ok_or_else(|| CatalogError::UnknownCurve(b.into()))?;
        if i == j && v != 0 {
            return Err(CatalogError::Format(format!("nonzero diagonal entry for {a}")));
        }
        self.values[i][j] = v;
        self.values[j][i] = v;
        Ok(())
    }

    pub fn get(&self, a: &str, b: &str) -> Option<u32> {
        Some(self.values[*self.index.get(a)?][*self.index.get(b)?])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.names.len();
        (0..n).all(|i| self.values[i][i] == 0 && (0..n).all(|j| self.values[i][j] == self.values[j][i]))
    }

    pub fn nonzero_entries(&self) -> Vec<(String, String, u32)> {
        let mut out = Vec::new();
        for i in 0..self.names.len() {
            for j in i + 1..self.names.len() {
                if self.values[i][j] != 0 {
                    out.push((self.names[i].clone(), self.names[j].clone(), self.values[i][j]));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub model: SurfaceModel,
    pub curves: Vec<CurveDescriptor>,
    pub table: IntersectionTable,
    pub twists: Vec<TwistRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurveKind {
    Alpha(usize),
    Beta(usize),
    Gamma(usize),
    Sep(usize),
    SepK(usize),
    Boundary,
    AlphaPartner(usize),
    BetaPartner(usize),
}

impl CurveKind {
    pub fn name(self) -> String {
        match self {
            CurveKind::Alpha(i) => format!("alpha_{i}"),
            CurveKind::Beta(i) => format!("beta_{i}"),
            CurveKind::Gamma(i) => format!("gamma_{i}"),
            CurveKind::Sep(i) => format!("sep_{i}"),
            CurveKind::SepK(k) => format!("sepk_{k}"),
            CurveKind::Boundary => "delta".into(),
            CurveKind::AlphaPartner(i) => format!("alphap_{i}"),
            CurveKind::BetaPartner(i) => format!("betap_{i}"),
        }
    }

    pub fn parse(s: &str) -> Option<CurveKind> {
        if s == "delta" {
            return Some(CurveKind::Boundary);
        }
        let (head, idx) = s.rsplit_once('_')?;
        let i: usize = idx.parse().ok()?;
        Some(match head {
            "alpha" => CurveKind::Alpha(i),
            "beta" => CurveKind::Beta(i),
            "gamma" => CurveKind::Gamma(i),
            "sep" => CurveKind::Sep(i),
            "sepk" => CurveKind::SepK(i),
            "alphap" => CurveKind::AlphaPartner(i),
            "betap" => CurveKind::BetaPartner(i),
            _ => return None,
        })
    }
}

fn lw(x: crate::word::Letter) -> Word {
    Word::letter(x)
}

fn wl(xs: &[crate::word::Letter]) -> Word {
    Word::from_letters(xs.iter().copied())
}

pub fn twist_alpha(g: usize, i: usize, e: i64) -> FreeAutomorphism {
    let (a, b) = (alpha(i), beta(i));
    let s = if e >= 0 { -a } else { a };
    let si = -s;
    FreeAutomorphism::from_fn(
        2 * g,
        |x| if x == b { wl(&[s, b]) } else { lw(x) },
        |x| if x == b { wl(&[si, b]) } else { lw(x) },
    )
    .expect("alpha twist is invertible")
}

pub fn twist_beta(g: usize, i: usize, e: i64) -> FreeAutomorphism {
    let (a, b) = (alpha(i), beta(i));
    let s = if e >= 0 { b } else { -b };
    let si = -s;
    FreeAutomorphism::from_fn(
        2 * g,
        |x| if x == a { wl(&[s, a]) } else { lw(x) },
        |x| if x == a { wl(&[si, a]) } else { lw(x) },
    )
    .expect("beta twist is invertible")
}

/// Twist about the chain connector between handles i and i+1.
pub fn twist_gamma(g: usize, i: usize) -> FreeAutomorphism {
    let (a1, b1, a2, b2) = (alpha(i), beta(i), alpha(i + 1), beta(i + 1));
    let fwd = |x| {
        if x == b1 {
            wl(&[b1, a2, -b1, -a1, b1])
        } else if x == a2 {
            wl(&[-b1, a1, b1, a2, -b1, -a1, b1])
        } else if x == b2 {
            wl(&[-b1, a1, b1, -a2, b2])
        } else {
            lw(x)
        }
    };
    let bwd = |x| {
        if x == b1 {
            wl(&[a1, b1, -a2])
        } else if x == a2 {
            wl(&[a2, -b1, -a1, b1, a2, -b1, a1, b1, -a2])
        } else if x == b2 {
            wl(&[a2, -b1, -a1, b1, b2])
        } else {
            lw(x)
        }
    };
    FreeAutomorphism::from_fn(2 * g, fwd, bwd).expect("gamma twist is invertible")
}

/// Conjugation of the letters of handles 1..=k by δ_k (k = g gives the boundary twist).
pub fn twist_sepk(g: usize, k: usize) -> FreeAutomorphism {
    FreeAutomorphism::partial_conjugation(2 * g, &partial_boundary(k), |x| crate::word::handle_of(x) <= k)
        .expect("separating twist is invertible")
}

pub fn twist_sep(g: usize, i: usize) -> FreeAutomorphism {
    FreeAutomorphism::partial_conjugation(2 * g, &handle_commutator(i), |x| crate::word::handle_of(x) == i)
        .expect("separating twist is invertible")
}

/// Handle that the partner of handle i is pushed around.
pub fn partner_handle(g: usize, i: usize) -> usize {
    if i < g {
        i + 1
    } else {
        g - 1
    }
}

/// Connector on the far side of the partner handle, if it exists.
fn far_connector(g: usize, i: usize) -> Option<usize> {
    if i < g {
        (i + 1 < g).then_some(i + 1)
    } else {
        (g >= 3).then(|| g - 2)
    }
}

/// ρ_i = T_{α_i} T_{β_i} T_{α_i}, which carries [a_i] to [b_i].
fn rho(g: usize, i: usize) -> FreeAutomorphism {
    let ta = twist_alpha(g, i, 1);
    FreeAutomorphism::compose_all(2 * g, [&ta, &twist_beta(g, i, 1), &ta])
}

/// Twist about alphap_i from the chain relation (T_{α_j} T_{β_j} T_γ)^4 = T_{α_i} T_{alphap_i}.
fn twist_alpha_partner(g: usize, i: usize) -> FreeAutomorphism {
    let j = partner_handle(g, i);
    let m = i.min(j);
    let chain = FreeAutomorphism::compose_all(2 * g, [&twist_alpha(g, j, 1), &twist_beta(g, j, 1), &twist_gamma(g, m)]);
    FreeAutomorphism::compose(&chain.pow(4), &twist_alpha(g, i, -1))
}

fn alpha_partner_word(g: usize, i: usize) -> Word {
    let j = partner_handle(g, i);
    let (aj, bj) = (lw(alpha(j)), lw(beta(j)));
    if i < g {
        Word::commutator(&aj, &bj).mul(&wl(&[-beta(i), alpha(i), beta(i)]))
    } else {
        Word::commutator(&bj, &aj).mul(&lw(alpha(i)))
    }
}

/// Declared geometric intersection numbers for the built-in catalog.
pub fn declared_intersection(g: usize, x: CurveKind, y: CurveKind) -> u32 {
    rule(g, x, y).or_else(|| rule(g, y, x)).unwrap_or(0)
}

fn partner_support(g: usize, i: usize) -> [usize; 2] {
    [i, partner_handle(g, i)]
}

fn rule(g: usize, x: CurveKind, y: CurveKind) -> Option<u32> {
    use CurveKind::*;
    let meets = |k: usize, i: usize| k == i || k + 1 == i;
    match (x, y) {
        (Alpha(i), Beta(j)) if i == j => Some(1),
        (Beta(i), Gamma(k)) if meets(k, i) => Some(1),
        (Gamma(k), Sep(i)) if i == k || i == k + 1 => Some(2),
        (Gamma(k), SepK(m)) if m == k => Some(2),
        (AlphaPartner(i), Beta(j)) if i == j => Some(1),
        (BetaPartner(i), Alpha(j)) if i == j => Some(1),
        (AlphaPartner(i), BetaPartner(j)) if i == j => Some(1),
        (AlphaPartner(i) | BetaPartner(i), Sep(j)) if i == j => Some(2),
        (AlphaPartner(i) | BetaPartner(i), SepK(m)) if m == i.min(partner_handle(g, i)) => Some(2),
        (BetaPartner(i), Gamma(k)) if meets(k, i) => Some(1),
        (AlphaPartner(i) | BetaPartner(i), Gamma(k)) if far_connector(g, i) == Some(k) => Some(2),
        (AlphaPartner(i) | BetaPartner(i), AlphaPartner(j) | BetaPartner(j)) if i != j => {
            let (s, t) = (partner_support(g, i), partner_support(g, j));
            s.iter().any(|h| t.contains(h)).then_some(2)
        }
        _ => None,
    }
}

fn class_of(g: usize, w: &Word) -> HomologyClass {
    HomologyClass::from_i64(&w.abelianization(2 * g))
}

/// Build the default catalog for genus g ≥ 2.
pub fn build_catalog(g: usize) -> Result<Catalog, CatalogError> {
    if g < 2 {
        return Err(CatalogError::GenusTooSmall(g));
    }
    let mut entries: Vec<(CurveKind, Word, FreeAutomorphism)> = Vec::new();
    for i in 1..=g {
        entries.push((CurveKind::Alpha(i), lw(alpha(i)), twist_alpha(g, i, 1)));
        entries.push((CurveKind::Beta(i), lw(beta(i)), twist_beta(g, i, 1)));
    }
    for i in 1..g {
        entries.push((CurveKind::Gamma(i), wl(&[-beta(i), alpha(i), beta(i), -alpha(i + 1)]), twist_gamma(g, i)));
    }
    for i in 1..=g {
        entries.push((CurveKind::Sep(i), handle_commutator(i), twist_sep(g, i)));
    }
    for k in 2..g {
        entries.push((CurveKind::SepK(k), partial_boundary(k), twist_sepk(g, k)));
    }
    entries.push((CurveKind::Boundary, boundary_word(g), twist_sepk(g, g)));
    for i in 1..=g {
        let x = twist_alpha_partner(g, i);
        let wa = alpha_partner_word(g, i);
        let r = rho(g, i);
        let wb = r.apply(&wa);
        let xb = x.conjugate_by(&r);
        entries.push((CurveKind::AlphaPartner(i), wa, x));
        entries.push((CurveKind::BetaPartner(i), wb, xb));
    }

    let names: Vec<String> = entries.iter().map(|(k, _, _)| k.name()).collect();
    let mut table = IntersectionTable::new(names);
    for (p, (kp, _, _)) in entries.iter().enumerate() {
        for (kq, _, _) in entries.iter().skip(p + 1) {
            let v = declared_intersection(g, *kp, *kq);
            if v != 0 {
                table.set(&kp.name(), &kq.name(), v)?;
            }
        }
    }
    let mut curves = Vec::new();
    let mut twists = Vec::new();
    for (k, w, f) in entries {
        let homology = class_of(g, &w);
        let separating = homology.is_zero();
        curves.push(CurveDescriptor { name: k.name(), homology, pi1_word: Some(w), separating });
        twists.push(TwistRecord { curve: k.name(), auto: f });
    }
    Ok(Catalog { model: SurfaceModel::one_boundary(g), curves, table, twists })
}

impl Catalog {
    pub fn genus(&self) -> usize {
        self.model.genus
    }

    pub fn curve(&self, name: &str) -> Result<&CurveDescriptor, CatalogError> {
        self.curves.iter().find(|c| c.name == name).ok_or_else(|| CatalogError::UnknownCurve(name.into()))
    }

    pub fn twist(&self, name: &str) -> Result<&FreeAutomorphism, CatalogError> {
        self.twists
            .iter()
            .find(|t| t.curve == name)
            .map(|t| &t.auto)
            .ok_or_else(|| CatalogError::MissingTwist(name.into()))
    }

    pub fn intersection(&self, a: &str, b: &str) -> Result<u32, CatalogError> {
        self.curve(a)?;
        self.curve(b)?;
        self.table.get(a, b).ok_or_else(|| CatalogError::UnknownCurve(format!("{a}/{b}")))
    }

    /// T_c ∘ T_{c'}⁻¹ for disjoint homologous curves.
    pub fn bounding_pair(&self, c: &str, c2: &str) -> Result<FreeAutomorphism, CatalogError> {
        let (x, y) = (self.curve(c)?, self.curve(c2)?);
        if x.homology != y.homology {
            return Err(CatalogError::NotHomologous(c.into(), c2.into()));
        }
        if self.intersection(c, c2)? != 0 {
            return Err(CatalogError::NotDisjoint(c.into(), c2.into()));
        }
        Ok(FreeAutomorphism::compose(self.twist(c)?, &self.twist(c2)?.inverse()))
    }

    pub fn separating_twist(&self, c: &str) -> Result<FreeAutomorphism, CatalogError> {
        let x = self.curve(c)?;
        if !x.separating {
            return Err(CatalogError::NotSeparating(c.into()));
        }
        Ok(self.twist(c)?.clone())
    }

    /// Pairs (c, c') of distinct disjoint homologous nonseparating curves with c < c' in catalog order.
    pub fn bounding_pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (p, x) in self.curves.iter().enumerate() {
            for y in self.curves.iter().skip(p + 1) {
                if !x.separating && x.homology == y.homology && self.table.get(&x.name, &y.name) == Some(0) {
                    out.push((x.name.clone(), y.name.clone()));
                }
            }
        }
        out
    }

    pub fn separating_curves(&self) -> Vec<String> {
        self.curves.iter().filter(|c| c.separating).map(|c| c.name.clone()).collect()
    }

    pub fn to_file(&self) -> CatalogFile {
        CatalogFile {
            format: CATALOG_FORMAT.into(),
            version: CATALOG_VERSION,
            genus: self.model.genus,
            boundary: self.model.boundary,
            delta: self.model.delta.clone(),
            curves: self
                .curves
                .iter()
                .map(|c| CurveEntry {
                    name: c.name.clone(),
                    homology: c.homology.to_i64(),
                    word: c.pi1_word.clone(),
                    separating: c.separating,
                })
                .collect(),
            intersections: self.table.nonzero_entries(),
            twists: self
                .twists
                .iter()
                .map(|t| TwistEntry { curve: t.curve.clone(), forward: t.auto.forward().to_vec(), backward: t.auto.backward().to_vec() })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("catalog serializes")
    }

    pub fn from_json(s: &str) -> Result<Catalog, CatalogError> {
        let f: CatalogFile = serde_json::from_str(s)?;
        f.into_catalog()
    }

    pub fn load(path: &std::path::Path) -> Result<Catalog, CatalogError> {
        Catalog::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Load the catalog from the file named by `TORELLI_CATALOG` when set and of
/// the right genus, otherwise build the default one.
pub fn load_or_build(g: usize) -> Result<Catalog, CatalogError> {
    match std::env::var_os(CATALOG_ENV) {
        Some(p) => {
            let c = Catalog::load(std::path::Path::new(&p))?;
            if c.genus() != g {
                return Err(CatalogError::Format(format!("catalog file has genus {}, requested {g}", c.genus())));
            }
            Ok(c)
        }
        None => build_catalog(g),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveEntry {
    pub name: String,
    pub homology: Vec<i64>,
    pub word: Option<Word>,
    pub separating: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwistEntry {
    pub curve: String,
    pub forward: Vec<Word>,
    pub backward: Vec<Word>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogFile {
    pub format: String,
    pub version: u32,
    pub genus: usize,
    pub boundary: usize,
    pub delta: Word,
    pub curves: Vec<CurveEntry>,
    pub intersections: Vec<(String, String, u32)>,
    pub twists: Vec<TwistEntry>,
}

impl CatalogFile {
    pub fn into_catalog(self) -> Result<Catalog, CatalogError> {
        if self.format != CATALOG_FORMAT {
            return Err(CatalogError::Format(format!("unexpected format tag {:?}", self.format)));
        }
        if self.version != CATALOG_VERSION {
            return Err(CatalogError::Format(format!("unsupported version {}", self.version)));
        }
        if self.genus < 2 {
            return Err(CatalogError::GenusTooSmall(self.genus));
        }
        let n = 2 * self.genus;
        let mut curves = Vec::new();
        for c in self.curves {
            if c.homology.len() != n {
                return Err(CatalogError::Format(format!("curve {} has homology of length {}", c.name, c.homology.len())));
            }
            curves.push(CurveDescriptor {
                name: c.name,
                homology: HomologyClass::from_i64(&c.homology),
                pi1_word: c.word,
                separating: c.separating,
            });
        }
        let mut table = IntersectionTable::new(curves.iter().map(|c| c.name.clone()).collect());
        for (a, b, v) in self.intersections {
            table.set(&a, &b, v)?;
        }
        let mut twists = Vec::new();
        for t in self.twists {
            if t.forward.len() != n {
                return Err(CatalogError::Format(format!("twist {} has {} images", t.curve, t.forward.len())));
            }
            twists.push(TwistRecord { curve: t.curve, auto: FreeAutomorphism::new(t.forward, t.backward)? });
        }
        Ok(Catalog {
            model: SurfaceModel { genus: self.genus, boundary: self.boundary, delta: self.delta },
            curves,
            table,
            twists,
        })
    }
}

/// Outcome of the checks on one twist record.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    pub curve: String,
    pub abelianization: bool,
    pub fixes_boundary: bool,
    pub invertible: bool,
    pub commutation_pairs: usize,
    pub braid_pairs: usize,
    pub failures: Vec<String>,
}

impl TwistReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn abelianized_matrix(f: &FreeAutomorphism) -> IntegerMatrix {
    IntegerMatrix::from_i64_rows(&f.abelianization())
}

/// The five checks: abelianization, boundary fixing, invertibility, commutation
/// for declared-disjoint pairs and braid relation for declared single crossings.
/// Pair checks are made against every other record in `cat`.
pub fn validate_twist(t: &TwistRecord, model: &SurfaceModel, cat: &Catalog) -> TwistReport {
    let mut rep = TwistReport { curve: t.curve.clone(), ..Default::default() };
    let curve = match cat.curve(&t.curve) {
        Ok(c) => c,
        Err(e) => {
            rep.failures.push(e.to_string());
            return rep;
        }
    };
    rep.abelianization = abelianized_matrix(&t.auto) == transvection(&curve.homology);
    if !rep.abelianization {
        rep.failures.push(format!("{}: abelianization differs from transvection", t.curve));
    }
    rep.fixes_boundary = t.auto.apply(&model.delta) == model.delta;
    if !rep.fixes_boundary {
        rep.failures.push(format!("{}: boundary word moved", t.curve));
    }
    rep.invertible = t.auto.certify().is_ok();
    if !rep.invertible {
        rep.failures.push(format!("{}: inverse certificate fails", t.curve));
    }
    for other in &cat.twists {
        if other.curve == t.curve {
            continue;
        }
        match cat.table.get(&t.curve, &other.curve) {
            Some(0) => {
                if t.auto.commutes_with(&other.auto) {
                    rep.commutation_pairs += 1;
                } else {
                    rep.failures.push(format!("{} / {}: declared disjoint but twists do not commute", t.curve, other.curve));
                }
            }
            Some(1) => {
                if t.auto.braids_with(&other.auto) {
                    rep.braid_pairs += 1;
                } else {
                    rep.failures.push(format!("{} / {}: declared i=1 but braid relation fails", t.curve, other.curve));
                }
            }
            Some(_) => {}
            None => rep.failures.push(format!("{} / {}: missing table entry", t.curve, other.curve)),
        }
    }
    rep
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub genus: usize,
    pub curves: usize,
    pub twist_reports: Vec<TwistReport>,
    /// Checks beyond the five: table shape, word/homology agreement, relation
    /// absence and parity for declared values ≥ 2, and word consistency.
    pub extra_checks: usize,
    pub failures: Vec<String>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.twist_reports.iter().all(TwistReport::passed)
    }

    pub fn all_failures(&self) -> Vec<String> {
        let mut v = self.failures.clone();
        for r in &self.twist_reports {
            v.extend(r.failures.iter().cloned());
        }
        v
    }
}

/// Full catalog validation. Twist records are checked in parallel; the report
/// order is the catalog order.
pub fn validate_catalog(cat: &Catalog) -> CatalogReport {
    let g = cat.genus();
    let n = 2 * g;
    let mut rep = CatalogReport { genus: g, curves: cat.curves.len(), ..Default::default() };
    rep.twist_reports = cat.twists.par_iter().map(|t| validate_twist(t, &cat.model, cat)).collect();

    if cat.model.delta != boundary_word(g) {
        rep.failures.push("surface model boundary word is not the product of handle commutators".into());
    }
    if cat.model.delta.len() != 4 * g {
        rep.failures.push("boundary word has the wrong length".into());
    }
    if !cat.table.is_symmetric() {
        rep.failures.push("intersection table is not symmetric with zero diagonal".into());
    }
    rep.extra_checks += 2;
    for c in &cat.curves {
        if cat.twist(&c.name).is_err() {
            rep.failures.push(format!("{}: no twist record", c.name));
        }
        if c.separating != c.homology.is_zero() {
            rep.failures.push(format!("{}: separating flag disagrees with homology", c.name));
        }
        if let Some(w) = &c.pi1_word {
            if HomologyClass::from_i64(&w.abelianization(n)) != c.homology {
                rep.failures.push(format!("{}: word does not abelianize to the declared class", c.name));
            }
            // a twist fixes its own curve
            if let Ok(f) = cat.twist(&c.name) {
                if f.apply(w).cyclic_normal_form() != w.cyclic_normal_form() {
                    rep.failures.push(format!("{}: twist moves its own curve", c.name));
                }
            }
        }
        rep.extra_checks += 3;
    }
    let pairs: Vec<(usize, usize)> =
        (0..cat.curves.len()).flat_map(|p| (p + 1..cat.curves.len()).map(move |q| (p, q))).collect();
    let extra: Vec<(usize, Vec<String>)> = pairs
        .par_iter()
        .map(|&(p, q)| {
            let (x, y) = (&cat.curves[p], &cat.curves[q]);
            let mut fails = Vec::new();
            let mut checks = 0;
            let v = cat.table.get(&x.name, &y.name).unwrap_or(0);
            let alg = pairing(&x.homology, &y.homology).unwrap();
            checks += 1;
            if BigInt::from(v) < alg.abs() || (BigInt::from(v) - alg.abs()).to_i64().unwrap() % 2 != 0 {
                fails.push(format!("{} / {}: declared {v} incompatible with algebraic pairing {alg}", x.name, y.name));
            }
            if let (Ok(fx), Ok(fy)) = (cat.twist(&x.name), cat.twist(&y.name)) {
                if v >= 2 {
                    checks += 1;
                    if fx.commutes_with(fy) || fx.braids_with(fy) {
                        fails.push(format!("{} / {}: declared {v} but twists satisfy a relation", x.name, y.name));
                    }
                }
                // T_x fixes the free homotopy class of y exactly when the curves are disjoint.
                for (f, c, o) in [(fx, y, x), (fy, x, y)] {
                    if let Some(w) = &c.pi1_word {
                        checks += 1;
                        let fixed = f.apply(w).cyclic_normal_form() == w.cyclic_normal_form();
                        if fixed != (v == 0) {
                            fails.push(format!(
                                "{} / {}: twist about {} {} the word of {} but declared value is {v}",
                                x.name,
                                y.name,
                                o.name,
                                if fixed { "fixes" } else { "moves" },
                                c.name
                            ));
                        }
                    }
                }
            }
            (checks, fails)
        })
        .collect();
    for (c, f) in extra {
        rep.extra_checks += c;
        rep.failures.extend(f);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::is_torelli;

    #[test]
    fn genus_three_basics() {
        let cat = build_catalog(3).unwrap();
        let a1 = cat.curve("alpha_1").unwrap();
        assert_eq!(a1.homology, HomologyClass::a(3, 1));
        assert_eq!(a1.pi1_word, Some(lw(alpha(1))));
        let s1 = cat.curve("sep_1").unwrap();
        assert!(s1.homology.is_zero() && s1.separating);
        assert_eq!(s1.pi1_word, Some(handle_commutator(1)));
        assert_eq!(cat.intersection("alpha_1", "beta_1").unwrap(), 1);
        assert_eq!(cat.intersection("alpha_1", "alpha_2").unwrap(), 0);
        assert!(build_catalog(1).is_err());
    }

    #[test]
    fn five_checks_on_handle_twists() {
        let cat = build_catalog(3).unwrap();
        let ta = cat.twist("alpha_1").unwrap();
        assert_eq!(abelianized_matrix(ta), transvection(&HomologyClass::a(3, 1)));
        assert!(ta.commutes_with(cat.twist("alpha_2").unwrap()));
        assert!(ta.braids_with(cat.twist("beta_1").unwrap()));
    }

    #[test]
    fn bounding_pairs_and_separating_twists() {
        let cat = build_catalog(3).unwrap();
        let bp = cat.bounding_pair("alpha_1", "alphap_1").unwrap();
        assert!(is_torelli(&abelianized_matrix(&bp)).unwrap());
        assert!(!bp.is_identity());
        assert!(cat.bounding_pair("alpha_1", "alpha_1").unwrap().is_identity());
        assert!(matches!(cat.bounding_pair("alpha_1", "beta_1"), Err(CatalogError::NotHomologous(..))));
        let s = cat.separating_twist("sep_1").unwrap();
        assert!(is_torelli(&abelianized_matrix(&s)).unwrap());
        assert_eq!(s.apply(&lw(alpha(1))), lw(alpha(1)).conjugate(&handle_commutator(1)));
        assert!(cat.separating_twist("alpha_1").is_err());
    }

    #[test]
    fn small_genus_validates() {
        for g in 2..=4 {
            let rep = validate_catalog(&build_catalog(g).unwrap());
            assert!(rep.passed(), "g={g}: {:?}", rep.all_failures());
        }
    }

    #[test]
    fn json_round_trip() {
        let cat = build_catalog(3).unwrap();
        let back = Catalog::from_json(&cat.to_json()).unwrap();
        assert_eq!(back, cat);
    }

    #[test]
    fn wrong_declaration_is_caught() {
        let mut cat = build_catalog(3).unwrap();
        cat.table.set("alpha_1", "alpha_2", 1).unwrap();
        let rep = validate_catalog(&cat);
        assert!(!rep.passed());
        let mut cat = build_catalog(3).unwrap();
        cat.table.set("alpha_1", "beta_1", 0).unwrap();
        assert!(!validate_catalog(&cat).passed());
    }
}
