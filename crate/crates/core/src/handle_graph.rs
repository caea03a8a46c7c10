//! Finite models of the handle graph H(a,b), alternating path certificates,
//! the homology-level grafting solver, and a Serre-style generation harness
//! for finite group actions on graphs.
//!
//! The true handle graph is infinite; instances are finite catalog-backed models.
//! Nothing here says anything about the infinite graph. Results hold for the
//! finite models only.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError};
use crate::homology::{pairing, solve_in_spans, HomologyClass, HomologyError};

#[derive(Debug, Error)]
pub enum HandleGraphError {
    #[error("algebraic intersection of a and b is {0}, expected 1")]
    Pairing(BigInt),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("invalid action model: {0}")]
    Model(String),
    #[error("element {perm:?} inverts edge {edge:?}")]
    Inversion { perm: Vec<usize>, edge: (usize, usize) },
    #[error("quotient is not a single edge: {vertex_orbits} vertex orbits, {edge_orbits} edge orbits")]
    Quotient { vertex_orbits: usize, edge_orbits: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("closure certification failed: stabilizers generate {got} of {order} elements")]
    Closure { got: usize, order: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HandleVertex {
    pub curve: String,
    /// -1 when the curve is used with reversed orientation.
    pub orientation: i8,
    pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HandleGraphInstance {
    pub vertices: Vec<HandleVertex>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathCertificate {
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub components: Vec<Vec<usize>>,
    pub certificates: Vec<PathCertificate>,
}

impl Connectivity {
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

pub fn build_instance(cat: &Catalog, a: &HomologyClass, b: &HomologyClass) -> Result<HandleGraphInstance, HandleGraphError> {
    let p = pairing(a, b)?;
    if !p.is_one() {
        return Err(HandleGraphError::Pairing(p));
    }
    let mut vertices = Vec::new();
    for c in &cat.curves {
        for (class, label) in [(a, Label::A), (b, Label::B)] {
            if c.homology == *class {
                vertices.push(HandleVertex { curve: c.name.clone(), orientation: 1, label });
            } else if c.homology == class.neg() {
                vertices.push(HandleVertex { curve: c.name.clone(), orientation: -1, label });
            }
        }
    }
    let mut edges = Vec::new();
    for u in 0..vertices.len() {
        for v in u + 1..vertices.len() {
            if cat.intersection(&vertices[u].curve, &vertices[v].curve)? == 1 {
                edges.push((u, v));
            }
        }
    }
    Ok(HandleGraphInstance { vertices, edges })
}

/// Instance keyed by curve names; a and b are the classes of those curves.
pub fn build_instance_by_name(cat: &Catalog, a: &str, b: &str) -> Result<HandleGraphInstance, HandleGraphError> {
    let a = cat.curve(a)?.homology.clone();
    let b = cat.curve(b)?.homology.clone();
    build_instance(cat, &a, &b)
}

impl HandleGraphInstance {
    pub fn from_parts(vertices: Vec<HandleVertex>, edges: Vec<(usize, usize)>) -> Self {
        HandleGraphInstance { vertices, edges }
    }

    pub fn index_of(&self, curve: &str) -> Result<usize, HandleGraphError> {
        self.vertices
            .iter()
            .position(|v| v.curve == curve)
            .ok_or_else(|| HandleGraphError::UnknownVertex(curve.to_string()))
    }

    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    /// Shortest path by BFS; alternation follows when edges join distinct labels.
    pub fn path(&self, from: usize, to: usize) -> Option<PathCertificate> {
        let adj = self.adjacency();
        let mut prev = vec![usize::MAX; self.vertices.len()];
        prev[from] = from;
        let mut q = VecDeque::from([from]);
        while let Some(u) = q.pop_front() {
            if u == to {
                let mut p = vec![to];
                let mut x = to;
                while x != from {
                    x = prev[x];
                    p.push(x);
                }
                p.reverse();
                return Some(PathCertificate { vertices: p });
            }
            for &v in &adj[u] {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    q.push_back(v);
                }
            }
        }
        None
    }

    /// Consecutive vertices adjacent, labels alternating, endpoints labeled a.
    pub fn verify_certificate(&self, c: &PathCertificate) -> bool {
        let adj = self.adjacency();
        let vs = &c.vertices;
        !vs.is_empty()
            && self.vertices[vs[0]].label == Label::A
            && self.vertices[*vs.last().unwrap()].label == Label::A
            && vs.windows(2).all(|w| adj[w[0]].contains(&w[1]) && self.vertices[w[0]].label != self.vertices[w[1]].label)
    }
}

pub fn connectivity(inst: &HandleGraphInstance) -> Connectivity {
    let adj = inst.adjacency();
    let n = inst.vertices.len();
    let mut comp = vec![usize::MAX; n];
    let mut components = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                    q.push_back(v);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    let a_vertices: Vec<usize> = (0..n).filter(|&v| inst.vertices[v].label == Label::A).collect();
    let mut certificates = Vec::new();
    for (k, &u) in a_vertices.iter().enumerate() {
        for &v in &a_vertices[k + 1..] {
            if comp[u] == comp[v] {
                if let Some(p) = inst.path(u, v) {
                    certificates.push(p);
                }
            }
        }
    }
    Connectivity { components, certificates }
}

/// h₁ ∈ span1, h₂ ∈ span2 with b = [β′] + h₁ + h₂, re-verified by substitution.
pub fn grafting_solve(
    beta_prime: &HomologyClass,
    target_b: &HomologyClass,
    span1: &[HomologyClass],
    span2: &[HomologyClass],
) -> Result<(HomologyClass, HomologyClass), HandleGraphError> {
    let (h1, h2) = solve_in_spans(&target_b.sub(beta_prime), span1, span2)?;
    if beta_prime.add(&h1).add(&h2) != *target_b {
        return Err(HandleGraphError::Homology(HomologyError::Infeasible));
    }
    Ok((h1, h2))
}

pub type Perm = Vec<usize>;

fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

fn invert(p: &[usize]) -> Perm {
    let mut r = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        r[x] = i;
    }
    r
}

fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// A finite group acting on a finite graph; permutations are index arrays
/// (p[i] is the image of vertex i).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupActionModel {
    pub vertices: usize,
    pub generators: Vec<Perm>,
    pub edges: Vec<(usize, usize)>,
}

/// Every element of the group generated by `gens`, by BFS over right multiplication.
pub fn closure(n: usize, gens: &[Perm]) -> BTreeSet<Perm> {
    let mut seen = BTreeSet::from([identity(n)]);
    let mut q = VecDeque::from([identity(n)]);
    while let Some(x) = q.pop_front() {
        for s in gens {
            let y = compose(&x, s);
            if seen.insert(y.clone()) {
                q.push_back(y);
            }
        }
    }
    seen
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl GroupActionModel {
    pub fn from_json(s: &str) -> Result<Self, HandleGraphError> {
        let m: GroupActionModel = serde_json::from_str(s).map_err(|e| HandleGraphError::Model(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), HandleGraphError> {
        let n = self.vertices;
        for p in &self.generators {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(HandleGraphError::Model(format!("{p:?} is not a permutation of {n} points")));
            }
        }
        let es: HashSet<(usize, usize)> = self.edges.iter().map(|&(u, v)| edge_key(u, v)).collect();
        for &(u, v) in &self.edges {
            if u >= n || v >= n || u == v {
                return Err(HandleGraphError::Model(format!("bad edge ({u},{v})")));
            }
            for p in &self.generators {
                if !es.contains(&edge_key(p[u], p[v])) {
                    return Err(HandleGraphError::Model(format!("{p:?} does not preserve edge ({u},{v})")));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> BTreeSet<Perm> {
        closure(self.vertices, &self.generators)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices;
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut q = VecDeque::from([0]);
        let mut count = 1;
        while let Some(u) = q.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    q.push_back(v);
                }
            }
        }
        count == n
    }

    fn orbit_count<T: Ord + Clone>(&self, items: Vec<T>, act: impl Fn(&Perm, &T) -> T) -> usize {
        let mut left: BTreeSet<T> = items.into_iter().collect();
        let mut orbits = 0;
        while let Some(x) = left.pop_first() {
            orbits += 1;
            let mut q = VecDeque::from([x]);
            while let Some(y) = q.pop_front() {
                for s in &self.generators {
                    let z = act(s, &y);
                    if left.remove(&z) {
                        q.push_back(z);
                    }
                }
            }
        }
        orbits
    }

    pub fn vertex_orbits(&self) -> usize {
        self.orbit_count((0..self.vertices).collect(), |p, &v| p[v])
    }

    pub fn edge_orbits(&self) -> usize {
        let es: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| edge_key(u, v)).collect();
        self.orbit_count(es, |p, &(u, v)| edge_key(p[u], p[v]))
    }

    pub fn find_inversion(&self, group: &BTreeSet<Perm>) -> Option<(Perm, (usize, usize))> {
        for p in group {
            for &(u, v) in &self.edges {
                if p[u] == v && p[v] == u {
                    return Some((p.clone(), (u, v)));
                }
            }
        }
        None
    }

    /// Schreier generators of the stabilizer of `v`, identity dropped, deduplicated.
    pub fn stabilizer_generators(&self, v: usize) -> Vec<Perm> {
        let n = self.vertices;
        let mut trans: BTreeMap<usize, Perm> = BTreeMap::from([(v, identity(n))]);
        let mut q = VecDeque::from([v]);
        while let Some(x) = q.pop_front() {
            for s in &self.generators {
                let y = s[x];
                if !trans.contains_key(&y) {
                    trans.insert(y, compose(s, &trans[&x]));
                    q.push_back(y);
                }
            }
        }
        let id = identity(n);
        let mut out = BTreeSet::new();
        for (&x, u) in &trans {
            for s in &self.generators {
                let g = compose(&invert(&trans[&s[x]]), &compose(s, u));
                debug_assert_eq!(g[v], v);
                if g != id {
                    out.insert(g);
                }
            }
        }
        out.into_iter().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreReport {
    pub edge: (usize, usize),
    pub stabilizer_v: Vec<Perm>,
    pub stabilizer_w: Vec<Perm>,
    pub generators: Vec<Perm>,
    pub group_order: usize,
}

/// G_v ∪ G_w for an edge (v, w), certified to generate G by closure.
pub fn serre_generators(model: &GroupActionModel, edge: (usize, usize)) -> Result<SerreReport, HandleGraphError> {
    model.validate()?;
    let group = model.group();
    if let Some((perm, edge)) = model.find_inversion(&group) {
        return Err(HandleGraphError::Inversion { perm, edge });
    }
    let (vo, eo) = (model.vertex_orbits(), model.edge_orbits());
    if vo != 2 || eo != 1 {
        return Err(HandleGraphError::Quotient { vertex_orbits: vo, edge_orbits: eo });
    }
    if !model.is_connected() {
        return Err(HandleGraphError::Disconnected);
    }
    let (v, w) = edge;
    let sv = model.stabilizer_generators(v);
    let sw = model.stabilizer_generators(w);
    let mut gens: Vec<Perm> = sv.iter().chain(&sw).cloned().collect::<BTreeSet<_>>().into_iter().collect();
    gens.sort();
    let got = closure(model.vertices, &gens).len();
    if got != group.len() {
        return Err(HandleGraphError::Closure { got, order: group.len() });
    }
    Ok(SerreReport { edge, stabilizer_v: sv, stabilizer_w: sw, generators: gens, group_order: group.len() })
}

/// Klein four-group on K_{2,2}: u₁,u₂ = 0,1 and v₁,v₂ = 2,3.
pub fn klein_four_model() -> GroupActionModel {
    GroupActionModel {
        vertices: 4,
        generators: vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]],
        edges: vec![(0, 2), (0, 3), (1, 2), (1, 3)],
    }
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut p = identity(n);
    p.shuffle(rng);
    p
}

/// G on X acting diagonally on two copies U, V of X; edges form the G-orbit
/// of (x₀, y₀). Returns None when the graph or quotient is unsuitable.
fn diagonal_model(rng: &mut ChaCha8Rng) -> Option<GroupActionModel> {
    let k = rng.gen_range(2..=5);
    let gens: Vec<Perm> = (0..rng.gen_range(1..=2)).map(|_| random_perm(rng, k)).collect();
    let lift = |p: &Perm| -> Perm { p.iter().copied().chain(p.iter().map(|&x| x + k)).collect() };
    let big: Vec<Perm> = gens.iter().map(lift).collect();
    let y0 = rng.gen_range(0..k);
    let mut edges = BTreeSet::from([(0, k + y0)]);
    let mut q = VecDeque::from([(0, k + y0)]);
    while let Some((u, v)) = q.pop_front() {
        for p in &big {
            let e = (p[u], p[v]);
            if edges.insert(e) {
                q.push_back(e);
            }
        }
    }
    let m = GroupActionModel { vertices: 2 * k, generators: big, edges: edges.into_iter().collect() };
    (m.is_connected() && m.vertex_orbits() == 2).then_some(m)
}

/// A × B with A transitive on U and B transitive on V, acting on K_{|U|,|V|}.
fn product_model(rng: &mut ChaCha8Rng) -> Option<GroupActionModel> {
    let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let mut gens = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let p = random_perm(rng, m);
        gens.push(p.into_iter().chain(m..m + n).collect::<Perm>());
    }
    for _ in 0..rng.gen_range(1..=2) {
        let p = random_perm(rng, n);
        gens.push((0..m).chain(p.into_iter().map(|x| x + m)).collect::<Perm>());
    }
    let edges = (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))).collect();
    let model = GroupActionModel { vertices: m + n, generators: gens, edges };
    (model.vertex_orbits() == 2).then_some(model)
}

/// `count` random models with a single-edge quotient, alternating between the
/// diagonal and product constructions.
pub fn random_models(seed: u64, count: usize) -> Vec<GroupActionModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let m = if out.len() % 2 == 0 { diagonal_model(&mut rng) } else { product_model(&mut rng) };
        if let Some(m) = m {
            out.push(m);
        }
    }
    out
}

/// Random feasible grafting instance in genus g: spans on disjoint handle
/// blocks, target assembled from β′ and sampled witnesses.
pub fn random_grafting_instance(
    rng: &mut ChaCha8Rng,
    g: usize,
) -> (HomologyClass, HomologyClass, Vec<HomologyClass>, Vec<HomologyClass>) {
    let n = 2 * g;
    let small = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..n).map(|_| rng.gen_range(-3..=3)).collect() };
    let beta_prime = HomologyClass::from_i64(&small(rng));
    let span1: Vec<HomologyClass> = (0..rng.gen_range(1..=3)).map(|_| HomologyClass::from_i64(&small(rng))).collect();
    let span2: Vec<HomologyClass> = (0..rng.gen_range(1..=3)).map(|_| HomologyClass::from_i64(&small(rng))).collect();
    let mut target = beta_prime.clone();
    for s in span1.iter().chain(&span2) {
        target = target.add(&s.scale(&BigInt::from(rng.gen_range(-2i64..=2))));
    }
    (beta_prime, target, span1, span2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_catalog;

    #[test]
    fn genus_three_instance() {
        let cat = build_catalog(3).unwrap();
        let inst = build_instance_by_name(&cat, "alpha_1", "beta_1").unwrap();
        let a1 = inst.index_of("alpha_1").unwrap();
        let b1 = inst.index_of("beta_1").unwrap();
        let ap = inst.index_of("alphap_1").unwrap();
        assert!(inst.edges.contains(&(a1.min(b1), a1.max(b1))));
        // both a-curves meet beta_1 once
        assert!(inst.edges.contains(&(ap.min(b1), ap.max(b1))));
        let c = connectivity(&inst);
        assert!(c.is_connected());
        assert!(!c.certificates.is_empty());
        assert!(c.certificates.iter().all(|p| inst.verify_certificate(p)));
        assert!(matches!(build_instance_by_name(&cat, "alpha_1", "alpha_2"), Err(HandleGraphError::Pairing(_))));
    }

    #[test]
    fn isolated_vertex() {
        let v = |c: &str, label| HandleVertex { curve: c.into(), orientation: 1, label };
        let inst = HandleGraphInstance::from_parts(vec![v("x", Label::A), v("y", Label::B), v("z", Label::A)], vec![(0, 1)]);
        assert_eq!(connectivity(&inst).components.len(), 2);
        let single = HandleGraphInstance::from_parts(vec![v("x", Label::A), v("y", Label::B)], vec![(0, 1)]);
        assert_eq!(connectivity(&single).components.len(), 1);
    }

    #[test]
    fn klein_four() {
        let m = klein_four_model();
        let r = serre_generators(&m, (0, 2)).unwrap();
        assert_eq!(r.stabilizer_v, vec![vec![0, 1, 3, 2]]);
        assert_eq!(r.stabilizer_w, vec![vec![1, 0, 2, 3]]);
        assert_eq!(r.group_order, 4);
    }

    #[test]
    fn trivial_group_single_edge() {
        let m = GroupActionModel { vertices: 2, generators: vec![], edges: vec![(0, 1)] };
        let r = serre_generators(&m, (0, 1)).unwrap();
        assert!(r.generators.is_empty());
        assert_eq!(r.group_order, 1);
    }

    #[test]
    fn inversion_rejected() {
        let m = GroupActionModel { vertices: 2, generators: vec![vec![1, 0]], edges: vec![(0, 1)] };
        assert!(matches!(serre_generators(&m, (0, 1)), Err(HandleGraphError::Inversion { .. })));
    }

    #[test]
    fn json_model() {
        let m = GroupActionModel::from_json(r#"{"vertices":4,"generators":[[1,0,2,3],[0,1,3,2]],"edges":[[0,2],[0,3],[1,2],[1,3]]}"#).unwrap();
        assert_eq!(m, klein_four_model());
        assert!(GroupActionModel::from_json(r#"{"vertices":2,"generators":[[0,0]],"edges":[]}"#).is_err());
    }

    #[test]
    fn grafting_examples() {
        let e = |k: usize| HomologyClass::basis(3, k - 1);
        let zero = HomologyClass::zero(3);
        let (h1, h2) = grafting_solve(&zero, &e(3).add(&e(6)), &[e(3), e(4)], &[e(5), e(6)]).unwrap();
        assert_eq!((h1, h2), (e(3), e(6)));
        assert!(grafting_solve(&zero, &e(1), &[e(3)], &[e(5)]).is_err());
    }
}
