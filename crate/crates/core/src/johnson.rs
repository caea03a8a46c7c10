//! Degree-two invariants: λ: [F,F] → Λ²H and the Johnson homomorphism
//! τ: Torelli → H ⊗ Λ²H, whose values on genuine Torelli elements lie in Λ³H.
//!
//! Conventions. For w with zero abelianization and letter classes v_1..v_m,
//! λ(w) = Σ_{p<q} v_p ∧ v_q halved. In coordinates λ_{rs} (r<s) equals
//! Σ_{p<q} v_p^r v_q^s, and the raw antisymmetric pair-sum is exactly 2λ.
//! τ(f) = Σ_x dual(x) ⊗ λ(f(x) x⁻¹) with dual(a_i) = -b_i, dual(b_i) = a_i.
//! Λ³H sits in H ⊗ Λ²H via
//! e_p∧e_q∧e_r ↦ e_p⊗(e_q∧e_r) - e_q⊗(e_p∧e_r) + e_r⊗(e_p∧e_q).

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{abelianized_matrix, Catalog, CatalogError};
use crate::homology::{snf_rank, IntegerMatrix};
use crate::word::{FreeAutomorphism, Letter, Word};

#[derive(Debug, Error)]
pub enum JohnsonError {
    #[error("word {0} is not in the commutator subgroup")]
    NotInCommutator(String),
    #[error("automorphism does not act trivially on homology")]
    NotTorelli,
    #[error("raw pair-sum has an odd coordinate")]
    Parity,
    #[error("bad recipe: {0}")]
    Recipe(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Index of the pair (p,q), p < q, 0-based letters.
pub fn pair_index(n: usize, p: usize, q: usize) -> usize {
    debug_assert!(p < q && q < n);
    p * n - p * (p + 1) / 2 + (q - p - 1)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lambda2Element {
    pub n: usize,
    pub coords: Vec<i64>,
}

impl Lambda2Element {
    pub fn zero(n: usize) -> Self {
        Lambda2Element { n, coords: vec![0; pair_count(n)] }
    }

    pub fn get(&self, p: usize, q: usize) -> i64 {
        match p.cmp(&q) {
            std::cmp::Ordering::Less => self.coords[pair_index(self.n, p, q)],
            std::cmp::Ordering::Greater => -self.coords[pair_index(self.n, q, p)],
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn add(&self, o: &Lambda2Element) -> Lambda2Element {
        Lambda2Element { n: self.n, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// e_p ∧ e_q for 0-based letters.
    pub fn wedge(n: usize, p: usize, q: usize) -> Self {
        let mut z = Self::zero(n);
        if p < q {
            z.coords[pair_index(n, p, q)] = 1;
        } else if q < p {
            z.coords[pair_index(n, q, p)] = -1;
        }
        z
    }
}

fn letter_index(x: Letter) -> (usize, i64) {
    (x.unsigned_abs() as usize - 1, x.signum() as i64)
}

/// Raw antisymmetric pair-sum Σ_{p<q} v_p ∧ v_q, computed with prefix sums.
pub fn raw_pair_sum(w: &Word, n: usize) -> Vec<i64> {
    let mut prefix = vec![0i64; n];
    let mut out = vec![0i64; pair_count(n)];
    for &x in w.letters() {
        let (c, s) = letter_index(x);
        for (r, &pr) in prefix.iter().enumerate() {
            if pr == 0 || r == c {
                continue;
            }
            if r < c {
                out[pair_index(n, r, c)] += pr * s;
            } else {
                out[pair_index(n, c, r)] -= pr * s;
            }
        }
        prefix[c] += s;
    }
    out
}

pub fn lambda2(w: &Word, n: usize) -> Result<Lambda2Element, JohnsonError> {
    if !w.in_commutator_subgroup(n) {
        return Err(JohnsonError::NotInCommutator(w.to_string()));
    }
    let mut prefix = vec![0i64; n];
    let mut out = vec![0i64; pair_count(n)];
    for &x in w.letters() {
        let (c, s) = letter_index(x);
        for (r, &pr) in prefix.iter().enumerate().take(c) {
            if pr != 0 {
                out[pair_index(n, r, c)] += pr * s;
            }
        }
        prefix[c] += s;
    }
    let raw = raw_pair_sum(w, n);
    if raw.iter().zip(&out).any(|(r, l)| r % 2 != 0 || r / 2 != *l) {
        return Err(JohnsonError::Parity);
    }
    Ok(Lambda2Element { n, coords: out })
}

/// Element of H ⊗ Λ²H, indexed by (letter x, pair p<q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TauTensor {
    pub n: usize,
    pub coords: Vec<i64>,
}

impl TauTensor {
    pub fn zero(n: usize) -> Self {
        TauTensor { n, coords: vec![0; n * pair_count(n)] }
    }

    fn idx(&self, x: usize, p: usize, q: usize) -> usize {
        x * pair_count(self.n) + pair_index(self.n, p, q)
    }

    /// Coefficient of e_x ⊗ (e_p ∧ e_q), antisymmetric in (p,q).
    pub fn get(&self, x: usize, p: usize, q: usize) -> i64 {
        match p.cmp(&q) {
            std::cmp::Ordering::Less => self.coords[self.idx(x, p, q)],
            std::cmp::Ordering::Greater => -self.coords[self.idx(x, q, p)],
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn add_at(&mut self, x: usize, p: usize, q: usize, v: i64) {
        match p.cmp(&q) {
            std::cmp::Ordering::Less => {
                let k = self.idx(x, p, q);
                self.coords[k] += v
            }
            std::cmp::Ordering::Greater => {
                let k = self.idx(x, q, p);
                self.coords[k] -= v
            }
            std::cmp::Ordering::Equal => {}
        }
    }

    pub fn add(&self, o: &TauTensor) -> TauTensor {
        TauTensor { n: self.n, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> TauTensor {
        TauTensor { n: self.n, coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Image of c·e_p∧e_q∧e_r under the standard inclusion.
    pub fn wedge3(n: usize, p: usize, q: usize, r: usize, c: i64) -> TauTensor {
        let mut t = TauTensor::zero(n);
        t.add_at(p, q, r, c);
        t.add_at(q, p, r, -c);
        t.add_at(r, p, q, c);
        t
    }

    /// Coordinates t[p][(q,r)] for p<q<r, which determine an element of Λ³H.
    pub fn lambda3_coords(&self) -> Vec<i64> {
        let n = self.n;
        let mut out = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                for r in q + 1..n {
                    out.push(self.get(p, q, r));
                }
            }
        }
        out
    }

    /// Sparse form keyed "(x,p,q)" with letter names.
    pub fn to_sparse(&self) -> BTreeMap<String, i64> {
        let name = |k: usize| Word::letter(k as Letter + 1).to_string();
        let mut m = BTreeMap::new();
        for x in 0..self.n {
            for (p, q) in pairs(self.n) {
                let v = self.get(x, p, q);
                if v != 0 {
                    m.insert(format!("({},{},{})", name(x), name(p), name(q)), v);
                }
            }
        }
        m
    }
}

impl Serialize for TauTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_sparse().serialize(s)
    }
}

/// Symplectic dual used in τ: a_i ↦ -b_i, b_i ↦ a_i (0-based index, sign).
fn dual(x: usize) -> (usize, i64) {
    if x % 2 == 0 {
        (x + 1, -1)
    } else {
        (x - 1, 1)
    }
}

pub fn tau(f: &FreeAutomorphism) -> Result<TauTensor, JohnsonError> {
    if !abelianized_matrix(f).is_identity() {
        return Err(JohnsonError::NotTorelli);
    }
    let n = f.rank();
    let mut t = TauTensor::zero(n);
    for x in 0..n {
        let l = Word::letter(x as Letter + 1);
        let d = f.apply(&l).mul(&l.inverse());
        let lam = lambda2(&d, n)?;
        let (y, s) = dual(x);
        for (p, q) in pairs(n) {
            let v = lam.get(p, q);
            if v != 0 {
                t.add_at(y, p, q, s * v);
            }
        }
    }
    Ok(t)
}

/// Obstructions to lying in Λ³H: entries with x ∈ {p,q}, and for p<q<r the
/// sums t[p][qr] + t[q][pr] and differences t[p][qr] - t[r][pq].
pub fn lambda3_defect(t: &TauTensor) -> Vec<i64> {
    let n = t.n;
    let mut out = Vec::new();
    for x in 0..n {
        for (p, q) in pairs(n) {
            if x == p || x == q {
                out.push(t.get(x, p, q));
            }
        }
    }
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                out.push(t.get(p, q, r) + t.get(q, p, r));
                out.push(t.get(p, q, r) - t.get(r, p, q));
            }
        }
    }
    out
}

pub fn defect_is_zero(t: &TauTensor) -> bool {
    lambda3_defect(t).iter().all(|&c| c == 0)
}

fn tensor_matrix(rows: &[Vec<i64>]) -> IntegerMatrix {
    IntegerMatrix::from_i64_rows(rows)
}

pub fn tau_span_rank(gens: &[FreeAutomorphism]) -> Result<usize, JohnsonError> {
    if gens.is_empty() {
        return Ok(0);
    }
    let rows: Vec<Vec<i64>> = gens.iter().map(|f| tau(f).map(|t| t.coords)).collect::<Result<_, _>>()?;
    Ok(snf_rank(&tensor_matrix(&rows)))
}

/// e_x ∧ ω with ω = Σ a_i ∧ b_i, for each basis letter x.
pub fn omega_images(n: usize) -> Vec<TauTensor> {
    let g = n / 2;
    (0..n)
        .map(|x| {
            let mut t = TauTensor::zero(n);
            for i in 0..g {
                let (a, b) = (2 * i, 2 * i + 1);
                if x == a || x == b {
                    continue;
                }
                // a, b are adjacent, so sorting (x, a, b) is an even permutation
                let mut idx = [x, a, b];
                idx.sort_unstable();
                t = t.add(&TauTensor::wedge3(n, idx[0], idx[1], idx[2], 1));
            }
            t
        })
        .collect()
}

/// Rank of the span in the closed quotient Λ³H / (H ∧ ω).
pub fn closed_tau_span_rank(taus: &[TauTensor]) -> usize {
    let n = match taus.first() {
        Some(t) => t.n,
        None => return 0,
    };
    let om = omega_images(n);
    let mut r = IncrementalRank::new(n * pair_count(n));
    for t in &om {
        r.insert(&t.coords);
    }
    let base = r.rank();
    for t in taus {
        r.insert(&t.coords);
    }
    r.rank() - base
}

/// Row echelon form over Z kept in fraction-free form, for greedy rank growth.
#[derive(Clone, Debug)]
pub struct IncrementalRank {
    dim: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IncrementalRank {
    pub fn new(dim: usize) -> Self {
        IncrementalRank { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[i64]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim);
        let mut v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for (piv, row) in &self.rows {
            if v[*piv].is_zero() {
                continue;
            }
            let a = row[*piv].clone();
            let b = v[*piv].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = &*x * &a - &b * y;
            }
            let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && g != BigInt::from(1) {
                for x in v.iter_mut() {
                    *x /= &g;
                }
            }
        }
        v
    }

    pub fn is_independent(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().any(|x| !x.is_zero())
    }

    /// Adds v; returns whether the rank grew.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let r = if r[p].is_negative() { r.into_iter().map(|x| -x).collect() } else { r };
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}

/// A Torelli element h∘(T_c T_{c'}⁻¹)∘h⁻¹ where h is a product of catalog twists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BpRecipe {
    pub curves: (String, String),
    /// Factors of h, left to right, each a curve name with exponent ±1.
    pub conjugator: Vec<(String, i8)>,
}

impl BpRecipe {
    pub fn parse(s: &str) -> Result<BpRecipe, JohnsonError> {
        // "alpha_1/alphap_1 @ beta_2 gamma_1^-1"
        let (pair, conj) = s.split_once('@').unwrap_or((s, ""));
        let (c1, c2) = pair.trim().split_once('/').ok_or_else(|| JohnsonError::Recipe(s.into()))?;
        let mut conjugator = Vec::new();
        for tok in conj.split_whitespace() {
            let (name, e) = match tok.strip_suffix("^-1") {
                Some(n) => (n, -1),
                None => (tok, 1),
            };
            conjugator.push((name.to_string(), e));
        }
        Ok(BpRecipe { curves: (c1.trim().into(), c2.trim().into()), conjugator })
    }

    pub fn render(&self) -> String {
        let mut s = format!("{}/{}", self.curves.0, self.curves.1);
        if !self.conjugator.is_empty() {
            s.push_str(" @");
            for (n, e) in &self.conjugator {
                s.push(' ');
                s.push_str(n);
                if *e < 0 {
                    s.push_str("^-1");
                }
            }
        }
        s
    }

    pub fn conjugator_auto(&self, cat: &Catalog) -> Result<FreeAutomorphism, JohnsonError> {
        let mut h = FreeAutomorphism::identity(2 * cat.genus());
        for (name, e) in &self.conjugator {
            let t = cat.twist(name)?;
            let t = if *e < 0 { t.inverse() } else { t.clone() };
            h = FreeAutomorphism::compose(&h, &t);
        }
        Ok(h)
    }

    pub fn materialize(&self, cat: &Catalog) -> Result<FreeAutomorphism, JohnsonError> {
        let bp = cat.bounding_pair(&self.curves.0, &self.curves.1)?;
        Ok(bp.conjugate_by(&self.conjugator_auto(cat)?))
    }
}

/// Base twists used as conjugators during curation: handle and chain curves.
pub fn conjugator_alphabet(cat: &Catalog) -> Vec<String> {
    cat.curves
        .iter()
        .map(|c| c.name.clone())
        .filter(|n| n.starts_with("alpha_") || n.starts_with("beta_") || n.starts_with("gamma_"))
        .collect()
}

/// h_* acting diagonally on H ⊗ Λ²H; `m` is the homology matrix of h.
pub fn act_on_tensor(m: &[Vec<i64>], t: &TauTensor) -> TauTensor {
    let n = t.n;
    let col = |k: usize| -> Vec<(usize, i64)> { (0..n).filter(|&r| m[r][k] != 0).map(|r| (r, m[r][k])).collect() };
    let cols: Vec<Vec<(usize, i64)>> = (0..n).map(col).collect();
    let mut out = TauTensor::zero(n);
    for x in 0..n {
        for (p, q) in pairs(n) {
            let c = t.get(x, p, q);
            if c == 0 {
                continue;
            }
            for &(y, my) in &cols[x] {
                for &(u, mu) in &cols[p] {
                    for &(v, mv) in &cols[q] {
                        out.add_at(y, u, v, c * my * mu * mv);
                    }
                }
            }
        }
    }
    out
}

const RANK_PRIME: i64 = 2_147_483_647;

/// Incremental rank over F_p. Rank mod p never exceeds the rational rank, so a
/// vector independent here is independent over Q.
#[derive(Clone, Debug)]
pub struct ModRank {
    rows: Vec<(usize, Vec<i64>)>,
}

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1i64;
    b = b.rem_euclid(RANK_PRIME);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % RANK_PRIME;
        }
        b = b * b % RANK_PRIME;
        e >>= 1;
    }
    r
}

impl ModRank {
    pub fn new() -> Self {
        ModRank { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: &[i64]) -> bool {
        let mut v: Vec<i64> = v.iter().map(|x| x.rem_euclid(RANK_PRIME)).collect();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x - c * y).rem_euclid(RANK_PRIME);
                }
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else { return false };
        let inv = pow_mod(v[p], RANK_PRIME - 2);
        for x in v.iter_mut() {
            *x = *x * inv % RANK_PRIME;
        }
        self.rows.push((p, v));
        true
    }
}

impl Default for ModRank {
    fn default() -> Self {
        Self::new()
    }
}

/// Deterministic breadth-first search for conjugates h∘(T_c T_{c'}⁻¹)∘h⁻¹ of the basic
/// alpha/alphap and beta/betap bounding pairs, with h a twist word of length
/// ≤ `max_len`, until the τ-span reaches rank `target`. Candidates are screened
/// with the predicted value h_*τ; every accepted one is materialized and its τ
/// recomputed, and a mismatch with the prediction is an error.
pub fn curate_family(cat: &Catalog, max_len: usize, target: usize) -> Result<Vec<BpRecipe>, JohnsonError> {
    let bases: Vec<((String, String), TauTensor)> = cat
        .bounding_pairs()
        .into_iter()
        .filter(|(a, b)| {
            (a.starts_with("alpha_") && b.starts_with("alphap_")) || (a.starts_with("beta_") && b.starts_with("betap_"))
        })
        .map(|p| {
            let t = tau(&cat.bounding_pair(&p.0, &p.1)?)?;
            Ok((p, t))
        })
        .collect::<Result<_, JohnsonError>>()?;
    let letters: Vec<(String, i8, Vec<Vec<i64>>)> = conjugator_alphabet(cat)
        .into_iter()
        .flat_map(|l| [(l.clone(), 1i8), (l, -1i8)])
        .map(|(l, e)| {
            let t = cat.twist(&l)?;
            let t = if e < 0 { t.inverse() } else { t.clone() };
            Ok((l, e, t.abelianization()))
        })
        .collect::<Result<_, JohnsonError>>()?;
    let mut rank = ModRank::new();
    let mut out = Vec::new();
    // Breadth-first search over the orbit of each base tensor, deduplicated by
    // tensor value; a new letter is prepended to the conjugator word.
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut level: Vec<(usize, Vec<usize>, TauTensor)> = Vec::new();
    for (b, (_, t)) in bases.iter().enumerate() {
        if seen.insert(t.coords.clone()) {
            level.push((b, vec![], t.clone()));
        }
    }
    for depth in 0..=max_len {
        for (b, w, predicted) in &level {
            if rank.rank() >= target {
                return Ok(out);
            }
            let mut probe = rank.clone();
            if !probe.insert(&predicted.coords) {
                continue;
            }
            let r = BpRecipe {
                curves: bases[*b].0.clone(),
                conjugator: w.iter().map(|&k| (letters[k].0.clone(), letters[k].1)).collect(),
            };
            let actual = tau(&r.materialize(cat)?)?;
            if actual != *predicted {
                return Err(JohnsonError::Recipe(format!("naturality mismatch for {}", r.render())));
            }
            rank = probe;
            out.push(r);
        }
        if depth == max_len {
            break;
        }
        let mut next = Vec::new();
        for (b, w, t) in &level {
            for (k, (_, _, m)) in letters.iter().enumerate() {
                let t2 = act_on_tensor(m, t);
                if seen.insert(t2.coords.clone()) {
                    let mut w2 = Vec::with_capacity(w.len() + 1);
                    w2.push(k);
                    w2.extend_from_slice(w);
                    next.push((*b, w2, t2));
                }
            }
        }
        level = next;
    }
    Ok(out)
}


/// Curated bounding-pair families whose τ-images span Λ³H (rank C(2g,3)),
/// found by `curate_family` with conjugator words of length ≤ 6.
pub mod family {
    pub const GENUS_3: &[&str] = &[
        "alpha_1/alphap_1",
        "beta_1/betap_1",
        "alpha_2/alphap_2",
        "beta_2/betap_2",
        "alpha_3/alphap_3",
        "beta_3/betap_3",
        "alpha_1/alphap_1 @ gamma_2",
        "beta_1/betap_1 @ gamma_1",
        "beta_1/betap_1 @ gamma_2",
        "beta_2/betap_2 @ gamma_1",
        "beta_3/betap_3 @ gamma_1",
        "alpha_1/alphap_1 @ beta_2 gamma_2",
        "beta_1/betap_1 @ beta_2 gamma_1",
        "beta_1/betap_1 @ beta_2 gamma_2",
        "beta_1/betap_1 @ beta_3 gamma_2",
        "beta_2/betap_2 @ beta_1 gamma_1",
        "beta_3/betap_3 @ beta_2 gamma_1",
        "beta_1/betap_1 @ gamma_2 beta_2 gamma_1",
        "beta_1/betap_1 @ beta_3 beta_2 gamma_2",
        "beta_1/betap_1 @ beta_3 gamma_2 beta_2 gamma_1",
    ];

    pub const GENUS_4: &[&str] = &[
        "alpha_1/alphap_1",
        "beta_1/betap_1",
        "alpha_2/alphap_2",
        "beta_2/betap_2",
        "alpha_3/alphap_3",
        "beta_3/betap_3",
        "alpha_4/alphap_4",
        "beta_4/betap_4",
        "alpha_1/alphap_1 @ gamma_2",
        "beta_1/betap_1 @ gamma_1",
        "beta_1/betap_1 @ gamma_2",
        "alpha_2/alphap_2 @ gamma_3",
        "beta_2/betap_2 @ gamma_1",
        "beta_2/betap_2 @ gamma_2",
        "beta_2/betap_2 @ gamma_3",
        "beta_3/betap_3 @ gamma_2",
        "beta_4/betap_4 @ gamma_2",
        "alpha_1/alphap_1 @ beta_2 gamma_2",
        "alpha_1/alphap_1 @ beta_3 gamma_2",
        "beta_1/betap_1 @ beta_2 gamma_1",
        "beta_1/betap_1 @ beta_2 gamma_2",
        "beta_1/betap_1 @ beta_3 gamma_2",
        "alpha_2/alphap_2 @ beta_3 gamma_3",
        "beta_2/betap_2 @ beta_1 gamma_1",
        "beta_2/betap_2 @ gamma_3 gamma_1",
        "beta_2/betap_2 @ beta_3 gamma_2",
        "beta_2/betap_2 @ beta_3 gamma_3",
        "beta_2/betap_2 @ beta_4 gamma_3",
        "beta_3/betap_3 @ beta_2 gamma_2",
        "beta_4/betap_4 @ beta_3 gamma_2",
        "alpha_1/alphap_1 @ beta_3 beta_2 gamma_2",
        "alpha_1/alphap_1 @ gamma_3 beta_3 gamma_2",
        "beta_1/betap_1 @ gamma_2 beta_2 gamma_1",
        "beta_1/betap_1 @ beta_3 beta_2 gamma_2",
        "beta_1/betap_1 @ gamma_3 beta_3 gamma_2",
        "beta_2/betap_2 @ gamma_3 beta_1 gamma_1",
        "beta_2/betap_2 @ beta_3 gamma_3 gamma_1",
        "beta_2/betap_2 @ beta_4 gamma_3 gamma_1",
        "beta_2/betap_2 @ gamma_3 beta_3 gamma_2",
        "beta_2/betap_2 @ beta_4 beta_3 gamma_3",
        "beta_3/betap_3 @ gamma_1 beta_2 gamma_2",
        "alpha_1/alphap_1 @ gamma_3 beta_3 beta_2 gamma_2",
        "alpha_1/alphap_1 @ beta_4 gamma_3 beta_3 gamma_2",
        "beta_1/betap_1 @ beta_3 gamma_2 beta_2 gamma_1",
        "beta_1/betap_1 @ gamma_3 beta_3 beta_2 gamma_2",
        "beta_1/betap_1 @ beta_4 gamma_3 beta_3 gamma_2",
        "beta_2/betap_2 @ beta_3 gamma_3 beta_1 gamma_1",
        "beta_2/betap_2 @ beta_4 gamma_3 beta_1 gamma_1",
        "beta_2/betap_2 @ beta_4 beta_3 gamma_3 gamma_1",
        "beta_2/betap_2 @ beta_4 gamma_3 beta_3 gamma_2",
        "beta_3/betap_3 @ beta_1 gamma_1 beta_2 gamma_2",
        "alpha_1/alphap_1 @ beta_4 gamma_3 beta_3 beta_2 gamma_2",
        "beta_1/betap_1 @ gamma_3 beta_3 gamma_2 beta_2 gamma_1",
        "beta_1/betap_1 @ beta_4 gamma_3 beta_3 beta_2 gamma_2",
        "beta_2/betap_2 @ beta_4 beta_3 gamma_3 beta_1 gamma_1",
        "beta_1/betap_1 @ beta_4 gamma_3 beta_3 gamma_2 beta_2 gamma_1",
    ];

    pub fn recipes(genus: usize) -> Option<&'static [&'static str]> {
        match genus {
            3 => Some(GENUS_3),
            4 => Some(GENUS_4),
            _ => None,
        }
    }
}

/// Materialized curated family for genus 3 or 4.
pub fn curated_family(cat: &Catalog) -> Result<Vec<(BpRecipe, FreeAutomorphism)>, JohnsonError> {
    let recipes = family::recipes(cat.genus())
        .ok_or_else(|| JohnsonError::Recipe(format!("no curated family for genus {}", cat.genus())))?;
    recipes
        .iter()
        .map(|s| {
            let r = BpRecipe::parse(s)?;
            let f = r.materialize(cat)?;
            Ok((r, f))
        })
        .collect()
}

pub fn lambda3_dim(genus: usize) -> usize {
    let n = 2 * genus;
    n * (n - 1) * (n - 2) / 6
}
