//! The Tomaszewski free basis {[x_i,x_j]^{x_i^{k_i}⋯x_n^{k_n}} : i < j} of the
//! commutator subgroup, a rewriter into that basis, the subgroups
//! K_i = [π,π] ∩ π₁(T_i) and two word-level case identities.
//!
//! Rewriting runs in position space: position k is the k-th letter of the
//! context ordering. Coset representatives of F/[F,F] are
//! t(v) = x_n^{v_n} ⋯ x_1^{v_1}, the Schreier generators are
//! s(v,m) = t(v) x_m t(v+e_m)⁻¹, trivial exactly when v_1 = ⋯ = v_{m-1} = 0.
//! With i the lowest nonzero coordinate of q (i < j) and c = q_i,
//!   c > 0: s(q,j) = s(q-e_i, j) · T(i,j; q+e_j)
//!   c < 0: s(q,j) = s(q+e_i, j) · T(i,j; q+e_i+e_j)⁻¹
//! where T(i,j;p) is the basis element with conjugator t(p)⁻¹. Repeating
//! clears the coordinates below j. The factor list is then freely reduced and
//! the product re-multiplied as a certificate.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stallings::SubgroupGraph;
use crate::word::{alpha, beta, boundary_word, handle_commutator, handle_of, Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CommutatorError {
    #[error("ordering is not a permutation of 1..={0}")]
    BadOrdering(usize),
    #[error("word is not in the commutator subgroup")]
    NotInCommutator,
    #[error("word uses letters beyond rank {0}")]
    Rank(usize),
    #[error("rewrite certificate failed for {0}")]
    Certificate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedBasisContext {
    pub rank: usize,
    /// order[k] is the letter at position k+1.
    order: Vec<Letter>,
    #[serde(skip)]
    position: Vec<usize>,
}

impl OrderedBasisContext {
    pub fn new(rank: usize, order: Vec<Letter>) -> Result<Self, CommutatorError> {
        let mut position = vec![0usize; rank + 1];
        if order.len() != rank {
            return Err(CommutatorError::BadOrdering(rank));
        }
        for (k, &x) in order.iter().enumerate() {
            if x <= 0 || x as usize > rank || position[x as usize] != 0 {
                return Err(CommutatorError::BadOrdering(rank));
            }
            position[x as usize] = k + 1;
        }
        Ok(OrderedBasisContext { rank, order, position })
    }

    pub fn standard(rank: usize) -> Self {
        OrderedBasisContext::new(rank, (1..=rank as Letter).collect()).unwrap()
    }

    /// (α2, β2, α1, β1, α3, β3, …, αg, βg)
    pub fn handle_two_first(genus: usize) -> Self {
        assert!(genus >= 2);
        let mut order = vec![alpha(2), beta(2), alpha(1), beta(1)];
        for h in 3..=genus {
            order.push(alpha(h));
            order.push(beta(h));
        }
        OrderedBasisContext::new(2 * genus, order).unwrap()
    }

    /// Comma-separated letter indices, e.g. "3,4,1,2,5,6".
    pub fn parse(rank: usize, s: &str) -> Result<Self, CommutatorError> {
        let order: Result<Vec<Letter>, _> = s.split(',').map(|t| t.trim().parse::<Letter>()).collect();
        OrderedBasisContext::new(rank, order.map_err(|_| CommutatorError::BadOrdering(rank))?)
    }

    pub fn order(&self) -> &[Letter] {
        &self.order
    }

    pub fn letter_at(&self, pos: usize) -> Letter {
        self.order[pos - 1]
    }

    pub fn position_of(&self, x: Letter) -> usize {
        self.position[x.unsigned_abs() as usize]
    }

    fn to_positions(&self, w: &Word) -> Vec<i32> {
        w.letters().iter().map(|&x| x.signum() * self.position_of(x) as i32).collect()
    }
}

/// [x_i, x_j]^{x_i^{k_i} ⋯ x_n^{k_n}} raised to `sign`; i, j are positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TomaszewskiElement {
    pub i: usize,
    pub j: usize,
    /// Exponents for positions i..=n.
    pub tail: Vec<i64>,
    pub sign: i8,
}

impl TomaszewskiElement {
    pub fn new(i: usize, j: usize, tail: Vec<i64>, sign: i8) -> Self {
        assert!(0 < i && i < j, "basis elements need i < j");
        assert!(sign == 1 || sign == -1);
        TomaszewskiElement { i, j, tail, sign }
    }

    pub fn inverse(&self) -> Self {
        TomaszewskiElement { sign: -self.sign, ..self.clone() }
    }

    fn same_base(&self, o: &Self) -> bool {
        self.i == o.i && self.j == o.j && self.tail == o.tail
    }

    /// Exponent on position m, zero outside the tail.
    pub fn exponent(&self, m: usize) -> i64 {
        if m < self.i {
            0
        } else {
            self.tail.get(m - self.i).copied().unwrap_or(0)
        }
    }
}

impl fmt::Display for TomaszewskiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail: Vec<String> = self.tail.iter().map(|k| k.to_string()).collect();
        write!(f, "({},{};({});{})", self.i, self.j, tail.join(","), if self.sign > 0 { "+1" } else { "-1" })
    }
}

pub fn realize(e: &TomaszewskiElement, ctx: &OrderedBasisContext) -> Word {
    let xi = Word::letter(ctx.letter_at(e.i));
    let xj = Word::letter(ctx.letter_at(e.j));
    let mut conj = Word::identity();
    for (off, &k) in e.tail.iter().enumerate() {
        if k != 0 {
            conj = conj.mul(&Word::letter(ctx.letter_at(e.i + off)).pow(k));
        }
    }
    let c = Word::commutator(&xi, &xj).conjugate(&conj);
    if e.sign < 0 {
        c.inverse()
    } else {
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub elements: Vec<TomaszewskiElement>,
}

impl Factorization {
    pub fn product(&self, ctx: &OrderedBasisContext) -> Word {
        let parts: Vec<Word> = self.elements.iter().map(|e| realize(e, ctx)).collect();
        Word::mul_all(parts.iter())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// T(i,j;p): basis element with conjugator t(p)⁻¹, p zero below i.
fn basis_from_coset(i: usize, j: usize, p: &[i64], sign: i8) -> TomaszewskiElement {
    let n = p.len();
    let tail = (i..=n).map(|m| -p[m - 1]).collect();
    TomaszewskiElement::new(i, j, tail, sign)
}

/// Factor list for s(q, j), q indexed by position - 1.
fn schreier_factors(q: &[i64], j: usize) -> Vec<TomaszewskiElement> {
    let mut q = q.to_vec();
    let mut rev = Vec::new();
    while let Some(i0) = q[..j - 1].iter().position(|&c| c != 0) {
        let i = i0 + 1;
        let c = q[i0];
        let mut p = q.clone();
        if c > 0 {
            p[j - 1] += 1;
            rev.push(basis_from_coset(i, j, &p, 1));
            q[i0] -= 1;
        } else {
            p[i0] += 1;
            p[j - 1] += 1;
            rev.push(basis_from_coset(i, j, &p, -1));
            q[i0] += 1;
        }
    }
    rev.reverse();
    rev
}

fn push_reduced(out: &mut Vec<TomaszewskiElement>, e: TomaszewskiElement) {
    if let Some(last) = out.last() {
        if last.same_base(&e) && last.sign == -e.sign {
            out.pop();
            return;
        }
    }
    out.push(e);
}

pub fn rewrite(w: &Word, ctx: &OrderedBasisContext) -> Result<Factorization, CommutatorError> {
    let n = ctx.rank;
    if w.max_letter() > n {
        return Err(CommutatorError::Rank(n));
    }
    if !w.in_commutator_subgroup(n) {
        return Err(CommutatorError::NotInCommutator);
    }
    let mut v = vec![0i64; n];
    let mut out: Vec<TomaszewskiElement> = Vec::new();
    for y in ctx.to_positions(w) {
        let m = y.unsigned_abs() as usize;
        if y > 0 {
            for e in schreier_factors(&v, m) {
                push_reduced(&mut out, e);
            }
            v[m - 1] += 1;
        } else {
            v[m - 1] -= 1;
            for e in schreier_factors(&v, m).into_iter().rev() {
                push_reduced(&mut out, e.inverse());
            }
        }
    }
    let f = Factorization { elements: out };
    if f.product(ctx) != *w {
        return Err(CommutatorError::Certificate(w.to_string()));
    }
    Ok(f)
}

/// All basis elements on `n` positions with every tail exponent in [-bound, bound]
/// and sign +1, in lexicographic order of (i, j, tail).
pub fn basis_elements(n: usize, bound: i64) -> Vec<TomaszewskiElement> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..=n {
            let len = n - i + 1;
            let mut tail = vec![-bound; len];
            'odometer: loop {
                out.push(TomaszewskiElement::new(i, j, tail.clone(), 1));
                for k in (0..len).rev() {
                    if tail[k] < bound {
                        tail[k] += 1;
                        continue 'odometer;
                    }
                    tail[k] = -bound;
                }
                break;
            }
        }
    }
    out
}

/// Search for a nontrivial freely reduced product of at most `max_len` basis
/// elements (tails bounded by `bound`, n positions) equal to the identity.
pub fn freeness_counterexample(n: usize, bound: i64, max_len: usize) -> Option<Vec<TomaszewskiElement>> {
    let ctx = OrderedBasisContext::standard(n);
    let mut elems = Vec::new();
    for e in basis_elements(n, bound) {
        elems.push(e.inverse());
        elems.push(e);
    }
    let words: Vec<Word> = elems.iter().map(|e| realize(e, &ctx)).collect();
    let k = elems.len();
    (0..k).into_par_iter().find_map_first(|a| {
        let mut stack: Vec<(Vec<usize>, Word)> = vec![(vec![a], words[a].clone())];
        while let Some((seq, w)) = stack.pop() {
            if w.is_empty() {
                return Some(seq.iter().map(|&s| elems[s].clone()).collect());
            }
            if seq.len() < max_len {
                let last = *seq.last().unwrap();
                for b in 0..k {
                    if elems[b].same_base(&elems[last]) && elems[b].sign == -elems[last].sign {
                        continue;
                    }
                    let mut s2 = seq.clone();
                    s2.push(b);
                    stack.push((s2, w.mul(&words[b])));
                }
            }
        }
        None
    })
}

/// K_i = [π,π] ∩ π₁(T_i). π₁(T_i) is generated by the letters of the other
/// handles and the boundary word [α_i, β_i], all at the common basepoint.
#[derive(Clone, Debug)]
pub struct KSubgroup {
    pub index: usize,
    pub genus: usize,
    pub generators: Vec<Word>,
    pub graph: SubgroupGraph,
}

impl KSubgroup {
    pub fn new(genus: usize, index: usize) -> Self {
        assert!(1 <= index && index <= genus);
        let mut generators = Vec::new();
        for h in 1..=genus {
            if h != index {
                generators.push(Word::letter(alpha(h)));
                generators.push(Word::letter(beta(h)));
            }
        }
        generators.push(handle_commutator(index));
        let graph = SubgroupGraph::from_generators(2 * genus, &generators);
        KSubgroup { index, genus, generators, graph }
    }
}

pub fn k_membership(w: &Word, k: &KSubgroup) -> bool {
    w.in_commutator_subgroup(2 * k.genus) && k.graph.contains(w)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ExceptionalPartition {
    pub exceptional: Vec<TomaszewskiElement>,
    pub regular: Vec<TomaszewskiElement>,
    /// Regular elements that fail K₂ membership. Empty when the claim holds.
    pub regular_outside_k2: Vec<TomaszewskiElement>,
    /// Exceptional elements that nonetheless lie in K₂.
    pub exceptional_in_k2: usize,
}

/// An element is exceptional when its first commutator letter is α₂ or β₂,
/// i.e. it has the shape [α₂,ζ]^{α₂^{n₂}β₂^{m₂}⋯} or [β₂,ζ′]^{β₂^{m₂}⋯}.
pub fn is_exceptional(e: &TomaszewskiElement, ctx: &OrderedBasisContext) -> bool {
    let x = ctx.letter_at(e.i);
    x == alpha(2) || x == beta(2)
}

pub fn exceptional_set(ctx: &OrderedBasisContext, bound: i64) -> ExceptionalPartition {
    let genus = ctx.rank / 2;
    let k2 = KSubgroup::new(genus, 2);
    let all = basis_elements(ctx.rank, bound);
    let tagged: Vec<(TomaszewskiElement, bool, bool)> = all
        .into_par_iter()
        .map(|e| {
            let exc = is_exceptional(&e, ctx);
            let inside = k_membership(&realize(&e, ctx), &k2);
            (e, exc, inside)
        })
        .collect();
    let mut p = ExceptionalPartition::default();
    for (e, exc, inside) in tagged {
        if exc {
            if inside {
                p.exceptional_in_k2 += 1;
            }
            p.exceptional.push(e);
        } else {
            if !inside {
                p.regular_outside_k2.push(e.clone());
            }
            p.regular.push(e);
        }
    }
    p
}

/// Leading commutator letter of the exceptional family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Lead {
    Alpha2,
    Beta2,
}

/// Exponents n_h, m_h for handles 1..=g (index h-1), the lead letter and ζ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseParams {
    pub genus: usize,
    pub n: Vec<i64>,
    pub m: Vec<i64>,
    pub lead: Lead,
    pub zeta: Letter,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub t: Word,
    pub t_prime: Word,
    pub theta: Word,
    pub theta_in_commutator: bool,
    pub theta_in_k2: bool,
    pub t_prime_in_k: bool,
    pub identity_holds: bool,
}

impl CaseOutcome {
    pub fn holds(&self) -> bool {
        self.theta_in_commutator && self.theta_in_k2 && self.t_prime_in_k && self.identity_holds
    }
}

fn handle_power(h: usize, n: i64, m: i64) -> Word {
    Word::letter(alpha(h)).pow(n).mul(&Word::letter(beta(h)).pow(m))
}

impl CaseParams {
    fn lead_letter(&self) -> Letter {
        match self.lead {
            Lead::Alpha2 => alpha(2),
            Lead::Beta2 => beta(2),
        }
    }

    fn lead_power(&self) -> Word {
        match self.lead {
            Lead::Alpha2 => handle_power(2, self.n[1], self.m[1]),
            Lead::Beta2 => Word::letter(beta(2)).pow(self.m[1]),
        }
    }

    /// Product over handles in `hs` of α_h^{n_h} β_h^{m_h}.
    fn tail(&self, hs: impl Iterator<Item = usize>) -> Word {
        let mut w = Word::identity();
        for h in hs {
            w = w.mul(&handle_power(h, self.n[h - 1], self.m[h - 1]));
        }
        w
    }

    fn check_shape(&self) -> Result<(), CommutatorError> {
        let g = self.genus;
        if g < 3 || self.n.len() != g || self.m.len() != g {
            return Err(CommutatorError::Precondition("need genus ≥ 3 and g exponents of each kind".into()));
        }
        let ctx = OrderedBasisContext::handle_two_first(g);
        let z = self.zeta;
        if z <= 0 || z as usize > 2 * g || ctx.position_of(z) <= ctx.position_of(self.lead_letter()) {
            return Err(CommutatorError::Precondition(format!("ζ = {} must follow the lead letter", Word::letter(z.max(1)))));
        }
        Ok(())
    }

    fn base_commutator(&self) -> Word {
        Word::commutator(&Word::letter(self.lead_letter()), &Word::letter(self.zeta))
    }
}

/// Conjugation by w on letters of handles other than `fixed`. Only evaluated on
/// words avoiding handle `fixed`.
fn partial_conjugate(t: &Word, w: &Word, fixed: usize) -> Result<Word, CommutatorError> {
    if t.letters().iter().any(|&x| handle_of(x) == fixed) {
        return Err(CommutatorError::Precondition(format!("t' uses letters of handle {fixed}")));
    }
    Ok(t.conjugate(w))
}

fn subgroup_with_boundary(genus: usize, h: usize) -> SubgroupGraph {
    SubgroupGraph::from_generators(
        2 * genus,
        &[Word::letter(alpha(h)), Word::letter(beta(h)), boundary_word(genus)],
    )
}

/// Reusable membership graphs for the case checks of one genus.
pub struct CaseContext {
    pub genus: usize,
    k1: KSubgroup,
    k2: KSubgroup,
    kg: KSubgroup,
    h1: SubgroupGraph,
    hg: SubgroupGraph,
}

impl CaseContext {
    pub fn new(genus: usize) -> Self {
        CaseContext {
            genus,
            k1: KSubgroup::new(genus, 1),
            k2: KSubgroup::new(genus, 2),
            kg: KSubgroup::new(genus, genus),
            h1: subgroup_with_boundary(genus, 1),
            hg: subgroup_with_boundary(genus, genus),
        }
    }
}

/// Case 1: ζ ∉ {α₁, β₁}. t' drops α₁^{n₁}β₁^{m₁} from the conjugator, f
/// conjugates the letters of handles ≠ 1 by w, and
/// θ = w⁻¹ · tail⁻¹ · α₁^{n₁}β₁^{m₁} · tail with tail = ∏_{h≥3} α_h^{n_h}β_h^{m_h}.
pub fn case1_identity(p: &CaseParams, w: &Word, cx: &CaseContext) -> Result<CaseOutcome, CommutatorError> {
    p.check_shape()?;
    let g = p.genus;
    if handle_of(p.zeta) == 1 {
        return Err(CommutatorError::Precondition("case 1 needs ζ outside handle 1".into()));
    }
    let a1 = handle_power(1, p.n[0], p.m[0]);
    if !cx.h1.contains(w) || w.abelianization(2 * g) != a1.abelianization(2 * g) {
        return Err(CommutatorError::Precondition(format!("w = {w} must lie in <α1,β1,δ> with class of α1^n1 β1^m1")));
    }
    let c = p.base_commutator();
    let lead = p.lead_power();
    let tail = p.tail(3..=g);
    let t = c.conjugate(&Word::mul_all([&lead, &a1, &tail]));
    let t_prime = c.conjugate(&lead.mul(&tail));
    let theta = Word::mul_all([&w.inverse(), &tail.inverse(), &a1, &tail]);
    let ft = partial_conjugate(&t_prime, w, 1)?;
    Ok(CaseOutcome {
        identity_holds: ft.conjugate(&theta) == t,
        theta_in_commutator: theta.in_commutator_subgroup(2 * g),
        theta_in_k2: k_membership(&theta, &cx.k2),
        t_prime_in_k: k_membership(&t_prime, &cx.k1),
        t,
        t_prime,
        theta,
    })
}

/// Case 2: ζ ∈ {α₁, β₁}. t' drops α_g^{n_g}β_g^{m_g}, f conjugates the letters of
/// handles ≠ g by w, and θ = w⁻¹ α_g^{n_g}β_g^{m_g}.
pub fn case2_identity(p: &CaseParams, w: &Word, cx: &CaseContext) -> Result<CaseOutcome, CommutatorError> {
    p.check_shape()?;
    let g = p.genus;
    if handle_of(p.zeta) != 1 {
        return Err(CommutatorError::Precondition("case 2 needs ζ in handle 1".into()));
    }
    let last = handle_power(g, p.n[g - 1], p.m[g - 1]);
    if !cx.hg.contains(w) || w.abelianization(2 * g) != last.abelianization(2 * g) {
        return Err(CommutatorError::Precondition(format!("w = {w} must lie in <αg,βg,δ> with class of αg^ng βg^mg")));
    }
    let c = p.base_commutator();
    let lead = p.lead_power();
    let a1 = handle_power(1, p.n[0], p.m[0]);
    let mid = p.tail(3..g);
    let t = c.conjugate(&Word::mul_all([&lead, &a1, &mid, &last]));
    let t_prime = c.conjugate(&Word::mul_all([&lead, &a1, &mid]));
    let theta = w.inverse().mul(&last);
    let ft = partial_conjugate(&t_prime, w, g)?;
    Ok(CaseOutcome {
        identity_holds: ft.conjugate(&theta) == t,
        theta_in_commutator: theta.in_commutator_subgroup(2 * g),
        theta_in_k2: k_membership(&theta, &cx.k2),
        t_prime_in_k: k_membership(&t_prime, &cx.kg),
        t,
        t_prime,
        theta,
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CaseBoxReport {
    pub genus: usize,
    pub bound: i64,
    pub case1_checked: usize,
    pub case2_checked: usize,
    pub failures: Vec<String>,
}

/// Admissible ζ after the lead letter in the (α₂,β₂,α₁,β₁,α₃,…) order.
pub fn admissible_zetas(genus: usize, lead: Lead, case: u8) -> Vec<Letter> {
    let ctx = OrderedBasisContext::handle_two_first(genus);
    let l = match lead {
        Lead::Alpha2 => alpha(2),
        Lead::Beta2 => beta(2),
    };
    ctx.order()
        .iter()
        .copied()
        .filter(|&z| ctx.position_of(z) > ctx.position_of(l))
        .filter(|&z| (handle_of(z) == 1) == (case == 2))
        .collect()
}

/// Exhaustive check over all exponents in [-bound, bound], both leads, every
/// admissible ζ and w = (α^n β^m) δ^p for p ∈ {-1, 0, 1}.
pub fn verify_case_box(genus: usize, bound: i64) -> CaseBoxReport {
    let cx = CaseContext::new(genus);
    let g = genus;
    let side = (2 * bound + 1) as usize;
    let total = side.pow(2 * g as u32);
    let delta = boundary_word(g);
    let decode = |mut code: usize| -> (Vec<i64>, Vec<i64>) {
        let mut n = vec![0; g];
        let mut m = vec![0; g];
        for h in 0..g {
            n[h] = (code % side) as i64 - bound;
            code /= side;
            m[h] = (code % side) as i64 - bound;
            code /= side;
        }
        (n, m)
    };
    let results: Vec<(usize, usize, Vec<String>)> = (0..total)
        .into_par_iter()
        .map(|code| {
            let (n, m) = decode(code);
            let mut c1 = 0;
            let mut c2 = 0;
            let mut fails = Vec::new();
            for lead in [Lead::Alpha2, Lead::Beta2] {
                // n₂ does not enter the β₂ family; count each β₂ tuple once
                if lead == Lead::Beta2 && n[1] != -bound {
                    continue;
                }
                for case in [1u8, 2] {
                    let h = if case == 1 { 1 } else { g };
                    let base = handle_power(h, n[h - 1], m[h - 1]);
                    for zeta in admissible_zetas(g, lead, case) {
                        let p = CaseParams { genus: g, n: n.clone(), m: m.clone(), lead, zeta };
                        for e in -1..=1 {
                            let w = base.mul(&delta.pow(e));
                            let r = if case == 1 { case1_identity(&p, &w, &cx) } else { case2_identity(&p, &w, &cx) };
                            match r {
                                Ok(o) if o.holds() => {}
                                Ok(o) => fails.push(format!("case {case} fails: {p:?}, w = {w}: {o:?}")),
                                Err(err) => fails.push(format!("case {case} rejected {p:?}, w = {w}: {err}")),
                            }
                            if case == 1 {
                                c1 += 1;
                            } else {
                                c2 += 1;
                            }
                        }
                    }
                }
            }
            (c1, c2, fails)
        })
        .collect();
    let mut rep = CaseBoxReport { genus, bound, ..Default::default() };
    for (a, b, f) in results {
        rep.case1_checked += a;
        rep.case2_checked += b;
        rep.failures.extend(f);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn el(i: usize, j: usize, tail: &[i64], sign: i8) -> TomaszewskiElement {
        TomaszewskiElement::new(i, j, tail.to_vec(), sign)
    }

    #[test]
    fn realize_examples() {
        let ctx = OrderedBasisContext::standard(3);
        assert_eq!(realize(&el(1, 2, &[0, 0, 0], 1), &ctx), w("X1 X2 x1 x2"));
        assert_eq!(realize(&el(1, 2, &[0, 0, 0], -1), &ctx), Word::commutator(&w("x2"), &w("x1")));
        assert_eq!(
            realize(&el(1, 2, &[0, 0, 1], 1), &ctx),
            Word::commutator(&w("x1"), &w("x2")).conjugate(&w("x3"))
        );
    }

    #[test]
    fn rewrite_examples() {
        let ctx = OrderedBasisContext::standard(3);
        let f = rewrite(&Word::commutator(&w("x1"), &w("x2")), &ctx).unwrap();
        assert_eq!(f.elements, vec![el(1, 2, &[0, 0, 0], 1)]);
        let f = rewrite(&Word::commutator(&w("x1"), &w("x2 x3")), &ctx).unwrap();
        assert_eq!(f.elements, vec![el(1, 3, &[0, 0, 0], 1), el(1, 2, &[0, 0, 1], 1)]);
        assert_eq!(rewrite(&Word::identity(), &ctx).unwrap().len(), 0);
        assert_eq!(rewrite(&w("x1"), &ctx), Err(CommutatorError::NotInCommutator));
    }

    #[test]
    fn rewrite_under_nonstandard_order() {
        let ctx = OrderedBasisContext::handle_two_first(3);
        for s in ["a1 b1 A1 B1", "a2 a3 A2 A3", "b3 a1 a1 B3 A1 A1", "a1 b2 a3 A1 B2 A3"] {
            let x = w(s);
            assert_eq!(rewrite(&x, &ctx).unwrap().product(&ctx), x);
        }
        assert!(OrderedBasisContext::parse(4, "1,2,2,4").is_err());
        assert_eq!(OrderedBasisContext::parse(4, "3,4,1,2").unwrap(), OrderedBasisContext::handle_two_first(2));
    }

    #[test]
    fn small_freeness() {
        assert!(freeness_counterexample(2, 1, 3).is_none());
    }

    #[test]
    fn k2_membership_examples() {
        let k2 = KSubgroup::new(3, 2);
        assert!(k_membership(&handle_commutator(1), &k2));
        assert!(k_membership(&handle_commutator(2), &k2));
        assert!(!k_membership(&Word::commutator(&w("a1"), &w("a2")), &k2));
        assert!(!k_membership(&w("a1"), &k2));
    }

    #[test]
    fn exceptional_examples() {
        let ctx = OrderedBasisContext::handle_two_first(3);
        // [α₂,β₂] conjugated by α₁ only
        let e = el(1, 2, &[0, 0, 1, 0, 0, 0], 1);
        assert!(is_exceptional(&e, &ctx));
        // [α₁,β₁]^{α₃}
        let e = el(3, 4, &[0, 0, 1, 0], 1);
        assert!(!is_exceptional(&e, &ctx));
        assert_eq!(realize(&e, &ctx), handle_commutator(1).conjugate(&w("a3")));
        assert!(k_membership(&realize(&e, &ctx), &KSubgroup::new(3, 2)));
    }

    #[test]
    fn case_examples() {
        let cx = CaseContext::new(3);
        let mut n = vec![0; 3];
        let m = vec![0; 3];
        n[0] = 1;
        let p = CaseParams { genus: 3, n, m: m.clone(), lead: Lead::Alpha2, zeta: alpha(3) };
        let o = case1_identity(&p, &w("a1"), &cx).unwrap();
        assert!(o.holds());
        let p0 = CaseParams { genus: 3, n: vec![0; 3], m, lead: Lead::Alpha2, zeta: alpha(3) };
        let o = case1_identity(&p0, &Word::identity(), &cx).unwrap();
        assert!(o.holds() && o.theta.is_empty() && o.t == o.t_prime);
        // w outside <α1,β1,δ>
        assert!(case1_identity(&p, &w("a1 a2 A2"), &cx).is_ok());
        assert!(case1_identity(&p, &w("a1 a3 A2"), &cx).is_err());
        // ζ in handle 1 belongs to case 2
        let bad = CaseParams { zeta: alpha(1), ..p };
        assert!(case1_identity(&bad, &w("a1"), &cx).is_err());
    }

    #[test]
    fn basis_enumeration_size() {
        // n = 3, |k| ≤ 1: pairs (1,2),(1,3) have 27 tails, (2,3) has 9
        assert_eq!(basis_elements(3, 1).len(), 63);
        assert_eq!(basis_elements(2, 0).len(), 1);
    }
}
