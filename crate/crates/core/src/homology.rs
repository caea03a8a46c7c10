//! Integer symplectic linear algebra on H1 = Z^{2g}, basis (a1,b1,...,ag,bg),
//! with the convention <a_i,b_i> = +1.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("target is outside the sum of the spans")]
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyClass {
    pub coords: Vec<BigInt>,
}

impl HomologyClass {
    pub fn zero(genus: usize) -> Self {
        HomologyClass { coords: vec![BigInt::zero(); 2 * genus] }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        assert!(v.len() % 2 == 0, "homology vectors have even length");
        HomologyClass { coords: v.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn a(genus: usize, i: usize) -> Self {
        Self::basis(genus, 2 * i - 2)
    }

    pub fn b(genus: usize, i: usize) -> Self {
        Self::basis(genus, 2 * i - 1)
    }

    pub fn basis(genus: usize, k: usize) -> Self {
        let mut c = Self::zero(genus);
        c.coords[k] = BigInt::one();
        c
    }

    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.coords.iter().map(|c| c.to_i64().expect("coordinate overflows i64")).collect()
    }

    pub fn add(&self, o: &HomologyClass) -> HomologyClass {
        assert_eq!(self.dim(), o.dim());
        HomologyClass { coords: self.coords.iter().zip(&o.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, o: &HomologyClass) -> HomologyClass {
        assert_eq!(self.dim(), o.dim());
        HomologyClass { coords: self.coords.iter().zip(&o.coords).map(|(x, y)| x - y).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> HomologyClass {
        HomologyClass { coords: self.coords.iter().map(|x| x * k).collect() }
    }

    pub fn neg(&self) -> HomologyClass {
        HomologyClass { coords: self.coords.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Algebraic intersection pairing.
pub fn pairing(x: &HomologyClass, y: &HomologyClass) -> Result<BigInt, HomologyError> {
    if x.dim() != y.dim() {
        return Err(HomologyError::Dimension(x.dim(), y.dim()));
    }
    let mut s = BigInt::zero();
    for i in 0..x.genus() {
        s += &x.coords[2 * i] * &y.coords[2 * i + 1] - &x.coords[2 * i + 1] * &y.coords[2 * i];
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntegerMatrix { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        if big.is_empty() {
            return Self::zeros(0, 0);
        }
        Self::from_rows(&big)
    }

    pub fn from_columns(cols: &[HomologyClass]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, HomologyClass::dim);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..r {
                m.data[i * c + j] = col.coords[i].clone();
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_i64().expect("entry overflows i64")).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        m
    }

    pub fn mul(&self, o: &IntegerMatrix) -> Result<IntegerMatrix, HomologyError> {
        if self.cols != o.rows {
            return Err(HomologyError::Dimension(self.cols, o.rows));
        }
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        m.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn apply(&self, x: &HomologyClass) -> HomologyClass {
        assert_eq!(self.cols, x.dim());
        let coords = (0..self.rows)
            .map(|r| self.row(r).iter().zip(&x.coords).map(|(a, b)| a * b).sum())
            .collect();
        HomologyClass { coords }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| *self.get(r, c) == BigInt::from((r == c) as i32)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

/// Gram matrix J of the pairing: J[i][j] = <e_i, e_j>.
pub fn symplectic_form(genus: usize) -> IntegerMatrix {
    let n = 2 * genus;
    let mut j = IntegerMatrix::zeros(n, n);
    for i in 0..genus {
        j.set(2 * i, 2 * i + 1, BigInt::one());
        j.set(2 * i + 1, 2 * i, -BigInt::one());
    }
    j
}

/// Matrix of x ↦ x + <x,c> c.
pub fn transvection(c: &HomologyClass) -> IntegerMatrix {
    let n = c.dim();
    let g = c.genus();
    let mut m = IntegerMatrix::identity(n);
    for j in 0..n {
        let ej = HomologyClass::basis(g, j);
        let k = pairing(&ej, c).unwrap();
        if k.is_zero() {
            continue;
        }
        for i in 0..n {
            let v = m.get(i, j) + &k * &c.coords[i];
            m.set(i, j, v);
        }
    }
    m
}

/// Inverse of a symplectic matrix: M⁻¹ = -J Mᵀ J.
pub fn symplectic_inverse(m: &IntegerMatrix) -> IntegerMatrix {
    let j = symplectic_form(m.rows / 2);
    let t = j.mul(&m.transpose()).unwrap().mul(&j).unwrap();
    let mut out = t;
    for r in 0..out.rows {
        for c in 0..out.cols {
            let v = -out.get(r, c).clone();
            out.set(r, c, v);
        }
    }
    out
}

pub fn is_symplectic(m: &IntegerMatrix) -> bool {
    if m.rows != m.cols || m.rows % 2 == 1 {
        return false;
    }
    let j = symplectic_form(m.rows / 2);
    m.transpose().mul(&j).unwrap().mul(m).unwrap() == j
}

pub fn is_torelli(m: &IntegerMatrix) -> Result<bool, HomologyError> {
    if m.rows != m.cols {
        return Err(HomologyError::NotSquare(m.rows, m.cols));
    }
    Ok(m.is_identity())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub rank: usize,
    /// Nonzero invariant factors, each dividing the next.
    pub divisors: Vec<BigInt>,
}

/// Fraction-free Smith normal form by unimodular row and column operations.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (d, _, _) = smith_core(m.clone(), false);
    finish_divisors(d)
}

pub fn snf_rank(m: &IntegerMatrix) -> usize {
    smith_normal_form(m).rank
}

fn finish_divisors(mut diag: Vec<BigInt>) -> SmithForm {
    // Canonicalize by repeated gcd/lcm until the divisibility chain holds.
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            if diag[i].is_zero() {
                continue;
            }
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    let divisors: Vec<BigInt> = diag.into_iter().map(|d| d.abs()).collect();
    SmithForm { rank: divisors.len(), divisors }
}

/// Returns the nonzero diagonal and, when `track` is set, unimodular U and V with
/// U·M·V diagonal (diagonal entries in the first `rank` positions).
fn smith_core(mut a: IntegerMatrix, track: bool) -> (Vec<BigInt>, IntegerMatrix, IntegerMatrix) {
    let (rows, cols) = (a.rows, a.cols);
    let mut u = if track { IntegerMatrix::identity(rows) } else { IntegerMatrix::zeros(0, 0) };
    let mut v = if track { IntegerMatrix::identity(cols) } else { IntegerMatrix::zeros(0, 0) };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero magnitude in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let x = a.get(r, c);
                if !x.is_zero() && best.map_or(true, |(br, bc)| x.abs() < a.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        if track {
            u.swap_rows(t, pr);
            v.swap_cols(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a.get(r, t).is_zero() {
                    continue;
                }
                let q = a.get(r, t).div_floor(a.get(t, t));
                row_axpy(&mut a, r, t, &q);
                if track {
                    row_axpy(&mut u, r, t, &q);
                }
                if !a.get(r, t).is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a.get(t, c).is_zero() {
                    continue;
                }
                let q = a.get(t, c).div_floor(a.get(t, t));
                col_axpy(&mut a, c, t, &q);
                if track {
                    col_axpy(&mut v, c, t, &q);
                }
                if !a.get(t, c).is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // move the smallest remaining entry of row/col t into the pivot
            let mut best = (t, t);
            for r in t..rows {
                let x = a.get(r, t);
                if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                    best = (r, t);
                }
            }
            for c in t..cols {
                let x = a.get(t, c);
                if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                    best = (t, c);
                }
            }
            if best.0 != t {
                a.swap_rows(t, best.0);
                if track {
                    u.swap_rows(t, best.0);
                }
            }
            if best.1 != t {
                a.swap_cols(t, best.1);
                if track {
                    v.swap_cols(t, best.1);
                }
            }
        }
        diag.push(a.get(t, t).clone());
        t += 1;
    }
    (diag, u, v)
}

/// row_r -= q * row_t
fn row_axpy(m: &mut IntegerMatrix, r: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.cols {
        let s = m.get(t, c);
        if !s.is_zero() {
            let v = m.get(r, c) - q * s;
            m.set(r, c, v);
        }
    }
}

/// col_c -= q * col_t
fn col_axpy(m: &mut IntegerMatrix, c: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in 0..m.rows {
        let s = m.get(r, t);
        if !s.is_zero() {
            let v = m.get(r, c) - q * s;
            m.set(r, c, v);
        }
    }
}

/// Integer solution x of A x = b, if one exists.
pub fn solve_integer(a: &IntegerMatrix, b: &HomologyClass) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.dim());
    let (diag, u, v) = smith_core(a.clone(), true);
    let ub = u.apply(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (k, d) in diag.iter().enumerate() {
        let (q, r) = ub.coords[k].div_rem(d);
        if !r.is_zero() {
            return None;
        }
        y[k] = q;
    }
    if ub.coords[diag.len()..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let x: Vec<BigInt> = (0..a.cols).map(|r| v.row(r).iter().zip(&y).map(|(p, q)| p * q).sum()).collect();
    Some(x)
}

fn combine(span: &[HomologyClass], coeffs: &[BigInt], dim: usize) -> HomologyClass {
    let mut out = HomologyClass { coords: vec![BigInt::zero(); dim] };
    for (s, c) in span.iter().zip(coeffs) {
        out = out.add(&s.scale(c));
    }
    out
}

/// Find h1 in span1 and h2 in span2 (integer spans) with h1 + h2 = target.
pub fn solve_in_spans(
    target: &HomologyClass,
    span1: &[HomologyClass],
    span2: &[HomologyClass],
) -> Result<(HomologyClass, HomologyClass), HomologyError> {
    let dim = target.dim();
    for s in span1.iter().chain(span2) {
        if s.dim() != dim {
            return Err(HomologyError::Dimension(dim, s.dim()));
        }
    }
    let zero = HomologyClass { coords: vec![BigInt::zero(); dim] };
    if span1.is_empty() && span2.is_empty() {
        return if target.is_zero() { Ok((zero.clone(), zero)) } else { Err(HomologyError::Infeasible) };
    }
    let all: Vec<HomologyClass> = span1.iter().chain(span2).cloned().collect();
    let a = IntegerMatrix::from_columns(&all);
    let x = solve_integer(&a, target).ok_or(HomologyError::Infeasible)?;
    let h1 = combine(span1, &x[..span1.len()], dim);
    let h2 = combine(span2, &x[span1.len()..], dim);
    if h1.add(&h2) != *target {
        return Err(HomologyError::Infeasible);
    }
    Ok((h1, h2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hc(v: &[i64]) -> HomologyClass {
        HomologyClass::from_i64(v)
    }

    #[test]
    fn pairing_convention() {
        let g = 2;
        assert_eq!(pairing(&HomologyClass::a(g, 1), &HomologyClass::b(g, 1)).unwrap(), BigInt::one());
        assert_eq!(pairing(&HomologyClass::a(g, 1), &HomologyClass::a(g, 2)).unwrap(), BigInt::zero());
        assert!(pairing(&hc(&[1, 0]), &hc(&[1, 0, 0, 0])).is_err());
    }

    #[test]
    fn transvection_on_basis() {
        let g = 2;
        let t = transvection(&HomologyClass::a(g, 1));
        assert_eq!(t.apply(&HomologyClass::a(g, 1)), HomologyClass::a(g, 1));
        // <b1,a1> = -1, so b1 ↦ b1 - a1
        assert_eq!(t.apply(&HomologyClass::b(g, 1)), hc(&[-1, 1, 0, 0]));
        assert!(transvection(&HomologyClass::zero(g)).is_identity());
        assert!(!is_torelli(&t).unwrap());
        assert!(is_torelli(&IntegerMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn snf_examples() {
        assert_eq!(snf_rank(&IntegerMatrix::identity(6)), 6);
        assert_eq!(snf_rank(&IntegerMatrix::zeros(4, 4)), 0);
        assert_eq!(snf_rank(&IntegerMatrix::from_i64_rows(&[vec![2, 0], vec![0, 0]])), 1);
        let s = smith_normal_form(&IntegerMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.divisors, vec![BigInt::from(1), BigInt::from(6)]);
        let s = smith_normal_form(&IntegerMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(s.divisors, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn spans() {
        let e = |k: usize| HomologyClass::basis(3, k - 1);
        let (h1, h2) = solve_in_spans(&e(3).add(&e(6)), &[e(3), e(4)], &[e(5), e(6)]).unwrap();
        assert_eq!((h1, h2), (e(3), e(6)));
        assert_eq!(solve_in_spans(&e(1), &[e(3)], &[e(5)]), Err(HomologyError::Infeasible));
        // 2e1 spans only even multiples
        assert!(solve_in_spans(&e(1), &[e(1).scale(&BigInt::from(2))], &[]).is_err());
    }
}
