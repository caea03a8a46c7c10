//! Free-group words over letters 1..=rank. Letter 2i-1 is a_i, letter 2i is b_i,
//! and a negative letter is the formal inverse.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Letter = i32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {letter} outside alphabet of rank {rank}")]
    AlphabetMismatch { letter: Letter, rank: usize },
    #[error("cannot parse word token {0:?}")]
    Parse(String),
    #[error("automorphism images have wrong arity: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("candidate inverse fails on letter {0}")]
    NotInverse(Letter),
}

pub const fn alpha(i: usize) -> Letter {
    (2 * i - 1) as Letter
}

pub const fn beta(i: usize) -> Letter {
    (2 * i) as Letter
}

/// Handle index (1-based) of a letter.
pub fn handle_of(x: Letter) -> usize {
    (x.unsigned_abs() as usize + 1) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    pub rank: usize,
}

impl Alphabet {
    pub fn new(rank: usize) -> Self {
        assert!(rank >= 2, "alphabet rank must be at least 2");
        Alphabet { rank }
    }

    pub fn surface(genus: usize) -> Self {
        Alphabet::new(2 * genus)
    }

    pub fn name(&self, x: Letter) -> String {
        letter_name(x)
    }

    pub fn check(&self, w: &Word) -> Result<(), WordError> {
        match w.0.iter().find(|x| x.unsigned_abs() as usize > self.rank) {
            Some(&letter) => Err(WordError::AlphabetMismatch { letter, rank: self.rank }),
            None => Ok(()),
        }
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word, WordError> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.mul(v))
    }
}

fn letter_name(x: Letter) -> String {
    let idx = x.unsigned_abs() as usize;
    let h = (idx + 1) / 2;
    let c = match (idx % 2 == 1, x > 0) {
        (true, true) => 'a',
        (true, false) => 'A',
        (false, true) => 'b',
        (false, false) => 'B',
    };
    format!("{c}{h}")
}

/// A freely reduced word. The reduction invariant is maintained by every constructor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: Letter) -> Self {
        assert!(x != 0);
        Word(vec![x])
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(it: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for x in it {
            assert!(x != 0, "letter 0 is not allowed");
            push_reduced(&mut out, x);
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &x in &other.0 {
            push_reduced(&mut out, x);
        }
        Word(out)
    }

    pub fn mul_all<'a, I: IntoIterator<Item = &'a Word>>(ws: I) -> Word {
        let mut out = Vec::new();
        for w in ws {
            for &x in &w.0 {
                push_reduced(&mut out, x);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..k.unsigned_abs() {
            for &x in &base.0 {
                push_reduced(&mut out, x);
            }
        }
        Word(out)
    }

    /// g⁻¹ w g
    pub fn conjugate(&self, g: &Word) -> Word {
        Word::mul_all([&g.inverse(), self, g])
    }

    /// [x, y] = x⁻¹ y⁻¹ x y
    pub fn commutator(x: &Word, y: &Word) -> Word {
        Word::mul_all([&x.inverse(), &y.inverse(), x, y])
    }

    pub fn abelianization(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for &x in &self.0 {
            let i = x.unsigned_abs() as usize - 1;
            assert!(i < rank, "letter {x} outside rank {rank}");
            v[i] += x.signum() as i64;
        }
        v
    }

    pub fn in_commutator_subgroup(&self, rank: usize) -> bool {
        self.abelianization(rank).iter().all(|&c| c == 0)
    }

    pub fn cyclically_reduced(&self) -> Word {
        let s = &self.0;
        let (mut i, mut j) = (0usize, s.len());
        while j - i >= 2 && s[i] == -s[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    /// Normal form of the conjugacy class: cyclic reduction then the
    /// lexicographically least rotation.
    pub fn cyclic_normal_form(&self) -> Word {
        let c = self.cyclically_reduced().0;
        if c.is_empty() {
            return Word(c);
        }
        let n = c.len();
        let best = (0..n)
            .min_by(|&p, &q| (0..n).map(|t| c[(p + t) % n]).cmp((0..n).map(|t| c[(q + t) % n])))
            .unwrap();
        Word((0..n).map(|t| c[(best + t) % n]).collect())
    }

    pub fn to_pairs(&self) -> Vec<(usize, i8)> {
        self.0.iter().map(|&x| (x.unsigned_abs() as usize, x.signum() as i8)).collect()
    }

    pub fn from_pairs(pairs: &[(usize, i8)]) -> Result<Word, WordError> {
        let mut out = Vec::with_capacity(pairs.len());
        for &(i, s) in pairs {
            if i == 0 || !(s == 1 || s == -1) {
                return Err(WordError::Parse(format!("[{i},{s}]")));
            }
            out.push(i as Letter * s as Letter);
        }
        Ok(Word::from_letters(out))
    }

    /// Accepts "a1 B1 a2", "x3 X1", "a1B1", "1" or "e" for the identity, and the
    /// JSON form [[1,1],[2,-1]].
    pub fn parse(s: &str) -> Result<Word, WordError> {
        let t = s.trim();
        if t.starts_with('[') {
            let pairs: Vec<(usize, i8)> =
                serde_json::from_str(t).map_err(|e| WordError::Parse(e.to_string()))?;
            return Word::from_pairs(&pairs);
        }
        if t.is_empty() || t == "1" || t == "e" {
            return Ok(Word::identity());
        }
        let mut out = Vec::new();
        let chars: Vec<char> = t.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            if c.is_whitespace() || c == '*' || c == '.' {
                k += 1;
                continue;
            }
            let start = k;
            k += 1;
            let ds = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let tok: String = chars[start..k].iter().collect();
            if ds == k {
                return Err(WordError::Parse(tok));
            }
            let idx: usize = chars[ds..k].iter().collect::<String>().parse().map_err(|_| WordError::Parse(tok.clone()))?;
            if idx == 0 {
                return Err(WordError::Parse(tok));
            }
            let x = match c {
                'a' => alpha(idx),
                'A' => -alpha(idx),
                'b' => beta(idx),
                'B' => -beta(idx),
                'x' => idx as Letter,
                'X' => -(idx as Letter),
                _ => return Err(WordError::Parse(tok)),
            };
            out.push(x);
        }
        Ok(Word::from_letters(out))
    }

    /// Generic-rank rendering: x3 X1 ...
    pub fn to_x_string(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&x| if x > 0 { format!("x{x}") } else { format!("X{}", -x) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[inline]
fn push_reduced(out: &mut Vec<Letter>, x: Letter) {
    if out.last() == Some(&-x) {
        out.pop();
    } else {
        out.push(x);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<String> = self.0.iter().map(|&x| letter_name(x)).collect();
        write!(f, "{}", names.join(" "))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Pairs(Vec<(usize, i8)>),
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => Word::parse(&s).map_err(serde::de::Error::custom),
            Repr::Pairs(p) => Word::from_pairs(&p).map_err(serde::de::Error::custom),
        }
    }
}

/// Boundary word δ = [a1,b1]...[ag,bg].
pub fn boundary_word(genus: usize) -> Word {
    partial_boundary(genus)
}

/// δ_k = [a1,b1]...[ak,bk]
pub fn partial_boundary(k: usize) -> Word {
    let mut out = Word::identity();
    for i in 1..=k {
        out = out.mul(&handle_commutator(i));
    }
    out
}

pub fn handle_commutator(i: usize) -> Word {
    Word::commutator(&Word::letter(alpha(i)), &Word::letter(beta(i)))
}

/// An endomorphism given by letter images. It has no inverse yet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    pub rank: usize,
    pub images: Vec<Word>,
}

impl Endomorphism {
    pub fn apply(&self, w: &Word) -> Word {
        apply_images(&self.images, w)
    }

    /// Promote to an automorphism once `inverse` is certified on every letter.
    pub fn promote(self, inverse: Vec<Word>) -> Result<FreeAutomorphism, WordError> {
        FreeAutomorphism::new(self.images, inverse)
    }
}

fn apply_images(images: &[Word], w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len() * 2);
    for &x in w.letters() {
        let img = &images[x.unsigned_abs() as usize - 1];
        if x > 0 {
            for &y in img.letters() {
                push_reduced(&mut out, y);
            }
        } else {
            for &y in img.letters().iter().rev() {
                push_reduced(&mut out, -y);
            }
        }
    }
    Word(out)
}

/// Automorphism of the free group with a certified inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeAutomorphism {
    forward: Vec<Word>,
    backward: Vec<Word>,
}

impl FreeAutomorphism {
    pub fn new(forward: Vec<Word>, backward: Vec<Word>) -> Result<Self, WordError> {
        let rank = forward.len();
        if backward.len() != rank {
            return Err(WordError::Arity { expected: rank, got: backward.len() });
        }
        for w in forward.iter().chain(backward.iter()) {
            Alphabet { rank }.check(w)?;
        }
        let f = FreeAutomorphism { forward, backward };
        f.certify()?;
        Ok(f)
    }

    /// Certification: backward∘forward and forward∘backward fix each letter.
    pub fn certify(&self) -> Result<(), WordError> {
        for x in 1..=self.rank() as Letter {
            let l = Word::letter(x);
            if apply_images(&self.backward, &apply_images(&self.forward, &l)) != l
                || apply_images(&self.forward, &apply_images(&self.backward, &l)) != l
            {
                return Err(WordError::NotInverse(x));
            }
        }
        Ok(())
    }

    pub fn identity(rank: usize) -> Self {
        let imgs: Vec<Word> = (1..=rank as Letter).map(Word::letter).collect();
        FreeAutomorphism { forward: imgs.clone(), backward: imgs }
    }

    /// Letter substitution x ↦ image(x) with its inverse supplied by `inverse(x)`.
    pub fn from_fn(
        rank: usize,
        image: impl Fn(Letter) -> Word,
        inverse: impl Fn(Letter) -> Word,
    ) -> Result<Self, WordError> {
        let fw = (1..=rank as Letter).map(&image).collect();
        let bw = (1..=rank as Letter).map(&inverse).collect();
        FreeAutomorphism::new(fw, bw)
    }

    /// Conjugation x ↦ w⁻¹ x w on the letters selected by `on`, identity elsewhere.
    /// Invertible whenever w is a word in the selected letters or fixed letters commute past it;
    /// the certificate decides.
    pub fn partial_conjugation(rank: usize, w: &Word, on: impl Fn(Letter) -> bool) -> Result<Self, WordError> {
        let wi = w.inverse();
        FreeAutomorphism::from_fn(
            rank,
            |x| if on(x) { Word::letter(x).conjugate(w) } else { Word::letter(x) },
            |x| if on(x) { Word::letter(x).conjugate(&wi) } else { Word::letter(x) },
        )
    }

    pub fn rank(&self) -> usize {
        self.forward.len()
    }

    pub fn image(&self, x: Letter) -> Word {
        let w = &self.forward[x.unsigned_abs() as usize - 1];
        if x > 0 {
            w.clone()
        } else {
            w.inverse()
        }
    }

    pub fn forward(&self) -> &[Word] {
        &self.forward
    }

    pub fn backward(&self) -> &[Word] {
        &self.backward
    }

    pub fn apply(&self, w: &Word) -> Word {
        apply_images(&self.forward, w)
    }

    pub fn apply_inverse(&self, w: &Word) -> Word {
        apply_images(&self.backward, w)
    }

    pub fn inverse(&self) -> FreeAutomorphism {
        FreeAutomorphism { forward: self.backward.clone(), backward: self.forward.clone() }
    }

    /// f∘g, so that compose(f,g).apply(w) = f.apply(g.apply(w)).
    pub fn compose(f: &FreeAutomorphism, g: &FreeAutomorphism) -> FreeAutomorphism {
        assert_eq!(f.rank(), g.rank(), "rank mismatch in compose");
        FreeAutomorphism {
            forward: g.forward.iter().map(|w| apply_images(&f.forward, w)).collect(),
            backward: f.backward.iter().map(|w| apply_images(&g.backward, w)).collect(),
        }
    }

    pub fn compose_all<'a, I: IntoIterator<Item = &'a FreeAutomorphism>>(rank: usize, fs: I) -> FreeAutomorphism {
        let mut acc = FreeAutomorphism::identity(rank);
        for f in fs {
            acc = FreeAutomorphism::compose(&acc, f);
        }
        acc
    }

    pub fn pow(&self, k: i64) -> FreeAutomorphism {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = FreeAutomorphism::identity(self.rank());
        for _ in 0..k.unsigned_abs() {
            acc = FreeAutomorphism::compose(&acc, &base);
        }
        acc
    }

    /// h f h⁻¹
    pub fn conjugate_by(&self, h: &FreeAutomorphism) -> FreeAutomorphism {
        FreeAutomorphism::compose(&FreeAutomorphism::compose(h, self), &h.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, w)| w.letters() == [(i + 1) as Letter])
    }

    pub fn commutes_with(&self, other: &FreeAutomorphism) -> bool {
        FreeAutomorphism::compose(self, other) == FreeAutomorphism::compose(other, self)
    }

    /// f g f = g f g
    pub fn braids_with(&self, other: &FreeAutomorphism) -> bool {
        let fg = FreeAutomorphism::compose(self, other);
        let gf = FreeAutomorphism::compose(other, self);
        FreeAutomorphism::compose(&fg, self).forward == FreeAutomorphism::compose(&gf, other).forward
    }

    /// Column j is the exponent sum of the image of letter j.
    pub fn abelianization(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let cols: Vec<Vec<i64>> = self.forward.iter().map(|w| w.abelianization(n)).collect();
        (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect()
    }

    pub fn max_image_len(&self) -> usize {
        self.forward.iter().chain(self.backward.iter()).map(Word::len).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn reduction_on_multiply() {
        assert_eq!(w("a1 A1").mul(&w("b1")), w("b1"));
        assert_eq!(w("A1 B1").mul(&w("a1 b1")), handle_commutator(1));
        assert_eq!(handle_commutator(1).len(), 4);
    }

    #[test]
    fn parse_forms_agree() {
        assert_eq!(w("a1 B1 a2"), w("[[1,1],[2,-1],[3,1]]"));
        assert_eq!(w("a1B1a2"), w("x1 X2 x3"));
        assert_eq!(w("1"), Word::identity());
        assert!(Word::parse("q1").is_err());
        assert!(Word::parse("a0").is_err());
        assert_eq!(w("a2 B3").to_string(), "a2 B3");
        let json = serde_json::to_string(&w("a1 B2")).unwrap();
        assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), w("a1 B2"));
        assert_eq!(serde_json::from_str::<Word>("[[3,-1]]").unwrap(), w("A2"));
    }

    #[test]
    fn alphabet_mismatch() {
        let al = Alphabet::new(2);
        assert!(al.multiply(&w("a1"), &w("a2")).is_err());
        assert_eq!(al.multiply(&w("a1"), &w("b1")).unwrap(), w("a1 b1"));
    }

    #[test]
    fn apply_substitution() {
        let f = FreeAutomorphism::from_fn(
            2,
            |x| if x == 2 { w("b1 a1") } else { Word::letter(x) },
            |x| if x == 2 { w("b1 A1") } else { Word::letter(x) },
        )
        .unwrap();
        assert_eq!(f.apply(&w("b1 A1")), w("b1"));
        assert!(FreeAutomorphism::compose(&f, &f.inverse()).is_identity());
    }

    #[test]
    fn bad_inverse_rejected() {
        let e = Endomorphism { rank: 2, images: vec![w("a1 b1"), w("b1")] };
        assert!(e.clone().promote(vec![w("a1"), w("b1")]).is_err());
        assert!(e.promote(vec![w("a1 B1"), w("b1")]).is_ok());
    }

    #[test]
    fn conjugation_basics() {
        assert_eq!(handle_commutator(1).conjugate(&Word::identity()), handle_commutator(1));
        for k in -3..=3 {
            assert_eq!(w("a1").conjugate(&w("a1").pow(k)), w("a1"));
        }
        assert_eq!(boundary_word(3).abelianization(6), vec![0; 6]);
        assert_eq!(boundary_word(3).len(), 12);
        assert_eq!(w("a1 b1").abelianization(4), vec![1, 1, 0, 0]);
    }

    #[test]
    fn cyclic_forms() {
        assert_eq!(w("b1 a1 B1").cyclic_normal_form(), w("a1"));
        assert_eq!(w("b1 a1").cyclic_normal_form(), w("a1 b1"));
        assert_eq!(w("a1 b1 A1").cyclic_normal_form(), w("b1"));
    }
}
