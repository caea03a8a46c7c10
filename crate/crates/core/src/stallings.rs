//! Stallings graphs of finitely generated subgroups and membership by path tracing.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::word::{Letter, Word};

/// Folded core graph. State 0 is the base state. Every transition `x` has a
/// matching reverse transition `-x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupGraph {
    rank: usize,
    transitions: Vec<BTreeMap<Letter, usize>>,
}

struct Folder {
    parent: Vec<usize>,
    out: Vec<BTreeMap<Letter, usize>>,
    pending: Vec<(usize, Letter, usize)>,
}

impl Folder {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn new_state(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.out.push(BTreeMap::new());
        self.out.len() - 1
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        let (keep, gone) = if a < b { (a, b) } else { (b, a) };
        self.parent[gone] = keep;
        let moved = std::mem::take(&mut self.out[gone]);
        for (x, t) in moved {
            self.pending.push((keep, x, t));
        }
    }

    fn lookup(&mut self, u: usize, x: Letter) -> Option<usize> {
        let t = self.out[u].get(&x).copied()?;
        Some(self.find(t))
    }

    fn run(&mut self) {
        while let Some((u, x, v)) = self.pending.pop() {
            let (u, v) = (self.find(u), self.find(v));
            if let Some(t) = self.lookup(u, x) {
                if t != v {
                    self.merge(t, v);
                    self.pending.push((u, x, v));
                    continue;
                }
            }
            if let Some(s) = self.lookup(v, -x) {
                if s != u {
                    self.merge(s, u);
                    self.pending.push((u, x, v));
                    continue;
                }
            }
            self.out[u].insert(x, v);
            self.out[v].insert(-x, u);
        }
    }
}

impl SubgroupGraph {
    pub fn from_generators(rank: usize, gens: &[Word]) -> Self {
        let mut f = Folder { parent: vec![0], out: vec![BTreeMap::new()], pending: Vec::new() };
        for g in gens {
            let ls = g.letters();
            if ls.is_empty() {
                continue;
            }
            let mut cur = 0;
            for (k, &x) in ls.iter().enumerate() {
                let next = if k + 1 == ls.len() { 0 } else { f.new_state() };
                f.pending.push((cur, x, next));
                f.run();
                cur = next;
            }
        }
        f.run();
        let mut g = SubgroupGraph::compact(rank, &mut f);
        g.core_reduce();
        g
    }

    fn compact(rank: usize, f: &mut Folder) -> SubgroupGraph {
        let base = f.find(0);
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut order = vec![base];
        index.insert(base, 0);
        let mut q = VecDeque::from([base]);
        while let Some(s) = q.pop_front() {
            let edges: Vec<(Letter, usize)> = f.out[s].iter().map(|(&x, &t)| (x, t)).collect();
            for (_, t) in edges {
                let t = f.find(t);
                if !index.contains_key(&t) {
                    index.insert(t, order.len());
                    order.push(t);
                    q.push_back(t);
                }
            }
        }
        let mut transitions = vec![BTreeMap::new(); order.len()];
        for (k, &s) in order.iter().enumerate() {
            let edges: Vec<(Letter, usize)> = f.out[s].iter().map(|(&x, &t)| (x, t)).collect();
            for (x, t) in edges {
                let t = f.find(t);
                transitions[k].insert(x, index[&t]);
            }
        }
        SubgroupGraph { rank, transitions }
    }

    /// Strip hanging trees: non-base states of degree at most 1.
    fn core_reduce(&mut self) {
        let n = self.transitions.len();
        let mut alive = vec![true; n];
        let mut changed = true;
        while changed {
            changed = false;
            for s in 1..n {
                if alive[s] && self.transitions[s].len() <= 1 {
                    alive[s] = false;
                    changed = true;
                    let edges: Vec<(Letter, usize)> = self.transitions[s].iter().map(|(&x, &t)| (x, t)).collect();
                    for (x, t) in edges {
                        self.transitions[t].remove(&-x);
                    }
                    self.transitions[s].clear();
                }
            }
        }
        let mut remap = vec![usize::MAX; n];
        let mut k = 0;
        for s in 0..n {
            if alive[s] {
                remap[s] = k;
                k += 1;
            }
        }
        let mut out = Vec::with_capacity(k);
        for s in 0..n {
            if alive[s] {
                out.push(self.transitions[s].iter().map(|(&x, &t)| (x, remap[t])).collect());
            }
        }
        self.transitions = out;
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn transitions(&self) -> &[BTreeMap<Letter, usize>] {
        &self.transitions
    }

    /// Free rank of the subgroup: E - V + 1.
    pub fn subgroup_rank(&self) -> usize {
        let e: usize = self.transitions.iter().map(BTreeMap::len).sum::<usize>() / 2;
        e + 1 - self.transitions.len()
    }

    pub fn is_folded(&self) -> bool {
        // A map cannot hold two targets for one label; check reverse consistency instead.
        self.transitions
            .iter()
            .enumerate()
            .all(|(s, m)| m.iter().all(|(&x, &t)| self.transitions[t].get(&-x) == Some(&s)))
    }

    pub fn contains(&self, w: &Word) -> bool {
        let mut s = 0usize;
        for &x in w.letters() {
            match self.transitions[s].get(&x) {
                Some(&t) => s = t,
                None => return false,
            }
        }
        s == 0
    }
}

pub fn stallings_contains(h: &SubgroupGraph, w: &Word) -> bool {
    h.contains(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn a_b_squared() {
        let h = SubgroupGraph::from_generators(2, &[w("a1"), w("b1 b1")]);
        assert!(h.is_folded());
        assert!(h.contains(&w("a1 b1 b1 A1")));
        assert!(!h.contains(&w("A1 B1 a1 b1")));
        assert!(h.contains(&Word::identity()));
        assert_eq!(h.subgroup_rank(), 2);
    }

    #[test]
    fn folding_collapses_to_free_factor() {
        let h = SubgroupGraph::from_generators(2, &[w("a1 b1"), w("b1")]);
        assert_eq!(h.state_count(), 1);
        assert!(h.contains(&w("a1")));
        let h = SubgroupGraph::from_generators(4, &[w("a1 b1 A1"), w("a1 a2 A1")]);
        assert!(h.contains(&w("a1 b1 a2 B1 A1")));
        assert!(!h.contains(&w("b1")));
    }

    #[test]
    fn empty_generators() {
        let h = SubgroupGraph::from_generators(2, &[]);
        assert!(h.contains(&Word::identity()));
        assert!(!h.contains(&w("a1")));
    }
}
