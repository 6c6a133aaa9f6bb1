//! Exact arithmetic in ℤ/m and linear solving over it.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_MODULUS: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoeffRing {
    modulus: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoeffElem {
    value: u32,
    ring: CoeffRing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffOp {
    Add,
    Sub,
    Mul,
}

impl CoeffRing {
    pub fn new(modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::input(format!("modulus must be at least 2, got {modulus}")));
        }
        if modulus > MAX_MODULUS {
            return Err(Error::input(format!("modulus {modulus} exceeds {MAX_MODULUS}")));
        }
        Ok(CoeffRing { modulus })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn elem(&self, value: i64) -> CoeffElem {
        CoeffElem { value: self.reduce(value), ring: *self }
    }

    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.modulus as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.modulus as u64) as u32
    }

    pub fn inverse(&self, a: u32) -> Option<u32> {
        let (g, s, _) = ext_gcd(a as i64 % self.modulus as i64, self.modulus as i64);
        if g != 1 {
            return None;
        }
        Some(self.reduce(s))
    }

    pub fn is_unit(&self, a: u32) -> bool {
        gcd(a as u64, self.modulus as u64) == 1
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.modulus
    }

    pub fn idempotents(&self) -> Vec<u32> {
        self.elements().filter(|&a| self.mul(a, a) == a).collect()
    }

    pub fn units(&self) -> Vec<u32> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    /// Bits needed to store one residue.
    pub fn bits(&self) -> u32 {
        32 - (self.modulus - 1).leading_zeros()
    }

    pub fn label(&self) -> String {
        if is_prime(self.modulus) {
            format!("F{}", self.modulus)
        } else {
            format!("Z/{}", self.modulus)
        }
    }
}

impl CoeffElem {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn inverse(&self) -> Option<CoeffElem> {
        self.ring.inverse(self.value).map(|v| CoeffElem { value: v, ring: self.ring })
    }

    pub fn add(&self, other: &CoeffElem) -> Result<CoeffElem> {
        coeff_arith(self, other, CoeffOp::Add)
    }

    pub fn sub(&self, other: &CoeffElem) -> Result<CoeffElem> {
        coeff_arith(self, other, CoeffOp::Sub)
    }

    pub fn mul(&self, other: &CoeffElem) -> Result<CoeffElem> {
        coeff_arith(self, other, CoeffOp::Mul)
    }
}

pub fn coeff_arith(a: &CoeffElem, b: &CoeffElem, op: CoeffOp) -> Result<CoeffElem> {
    if a.ring != b.ring {
        return Err(Error::structural(format!(
            "operands live in Z/{} and Z/{}",
            a.ring.modulus, b.ring.modulus
        )));
    }
    let r = a.ring;
    let value = match op {
        CoeffOp::Add => r.add(a.value, b.value),
        CoeffOp::Sub => r.sub(a.value, b.value),
        CoeffOp::Mul => r.mul(a.value, b.value),
    };
    Ok(CoeffElem { value, ring: r })
}

pub fn coeff_inverse(a: &CoeffElem) -> Option<CoeffElem> {
    a.inverse()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns (g, s, t) with g = s·a + t·b, g ≥ 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn is_prime(m: u32) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| !m.is_multiple_of(d))
}

/// Dense row-major matrix of residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::structural("ragged matrix rows"));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.concat() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, cols: &[Vec<u32>]) -> Result<Self> {
        let mut m = Matrix::zeros(len, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != len {
                return Err(Error::structural("column length mismatch"));
            }
            for (i, &v) in col.iter().enumerate() {
                m.data[i * cols.len() + j] = v;
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, ring: &CoeffRing, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::structural("matrix product dimension mismatch"));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ring.add(out.get(i, j), ring.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, ring: &CoeffRing, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.cols {
            return Err(Error::structural("matrix-vector dimension mismatch"));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0, |acc, j| ring.add(acc, ring.mul(self.get(i, j), x[j])))
            })
            .collect())
    }

    /// Determinant of the integer lift (entries in [0, m)), reduced mod m.
    pub fn det_mod(&self, ring: &CoeffRing) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::structural("determinant of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        // Bareiss fraction-free elimination; exact in i128 for desk-scale sizes.
        let mut a: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                match (k + 1..n).find(|&r| a[r * n + k] != 0) {
                    Some(r) => {
                        for c in 0..n {
                            a.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
                    a[i * n + j] = v / prev;
                }
            }
            prev = a[k * n + k];
        }
        let det = sign * a[n * n - 1];
        Ok(det.rem_euclid(ring.modulus() as i128) as u32)
    }
}

/// Finds some x with A·x = b over ℤ/m, or None when the system is insoluble.
///
/// Diagonalizes A by unimodular row and column operations built from integer
/// extended gcds, then solves the decoupled congruences d·y ≡ c.
pub fn solve_linear_system(ring: &CoeffRing, a: &Matrix, b: &[u32]) -> Result<Option<Vec<u32>>> {
    if b.len() != a.rows {
        return Err(Error::structural(format!(
            "system has {} rows but right-hand side has length {}",
            a.rows,
            b.len()
        )));
    }
    let d = Diagonalization::new(ring, a);
    let c = d.transform_rhs(ring, b);
    let m = ring.modulus() as u64;
    let mut y = vec![0u32; a.cols];
    for t in 0..a.rows {
        let piv = if t < d.diag.len() { d.diag[t] } else { 0 };
        let ct = c[t] as u64;
        let g = gcd(piv as u64, m);
        if !ct.is_multiple_of(g) {
            return Ok(None);
        }
        if t < a.cols && piv != 0 {
            let mg = m / g;
            let dg = (piv as u64 / g) % mg;
            let inv = if mg == 1 {
                0
            } else {
                let (_, s, _) = ext_gcd(dg as i64, mg as i64);
                s.rem_euclid(mg as i64) as u64
            };
            y[t] = (((ct / g) % mg) * inv % mg) as u32;
        }
    }
    let x = d.v.apply(ring, &y)?;
    debug_assert_eq!(a.apply(ring, &x).ok().as_deref(), Some(b));
    Ok(Some(x))
}

/// True iff A·x = 0 forces x = 0.
pub fn kernel_is_trivial(ring: &CoeffRing, a: &Matrix) -> bool {
    let d = Diagonalization::new(ring, a);
    (0..a.cols).all(|t| t < d.diag.len() && ring.is_unit(d.diag[t]))
}

struct Diagonalization {
    /// Diagonal of U·A·V (length min(rows, cols)).
    diag: Vec<u32>,
    /// Row operations recorded as 2×2 unimodular blocks.
    row_ops: Vec<RowOp>,
    v: Matrix,
}

enum RowOp {
    Swap(usize, usize),
    /// (row p, row q) <- (a·p + b·q, c·p + d·q)
    Mix(usize, usize, [u32; 4]),
}

impl Diagonalization {
    fn new(ring: &CoeffRing, a: &Matrix) -> Self {
        let (rows, cols) = (a.rows, a.cols);
        let mut w = a.clone();
        let mut v = Matrix::identity(cols);
        let mut row_ops = Vec::new();
        let m = ring.modulus() as i64;
        let r = |x: i64| x.rem_euclid(m) as u32;
        let steps = rows.min(cols);
        for t in 0..steps {
            loop {
                // pivot: smallest nonzero entry of the trailing block
                let mut best: Option<(u32, usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = w.get(i, j);
                        if x != 0 && best.is_none_or(|(bv, _, _)| x < bv) {
                            best = Some((x, i, j));
                        }
                    }
                }
                let Some((_, pi, pj)) = best else { break };
                if pi != t {
                    for c in 0..cols {
                        w.data.swap(pi * cols + c, t * cols + c);
                    }
                    row_ops.push(RowOp::Swap(pi, t));
                }
                if pj != t {
                    for rr in 0..rows {
                        w.data.swap(rr * cols + pj, rr * cols + t);
                    }
                    for rr in 0..cols {
                        v.data.swap(rr * cols + pj, rr * cols + t);
                    }
                }
                let mut dirty = false;
                for i in t + 1..rows {
                    let q = w.get(i, t) as i64;
                    if q == 0 {
                        continue;
                    }
                    let p = w.get(t, t) as i64;
                    let coeffs = if q % p == 0 {
                        [1, 0, r(-(q / p)), 1]
                    } else {
                        let (g, s, tt) = ext_gcd(p, q);
                        dirty = true;
                        [r(s), r(tt), r(-(q / g)), r(p / g)]
                    };
                    for c in 0..cols {
                        let (x, y) = (w.get(t, c), w.get(i, c));
                        w.set(t, c, mix(ring, coeffs[0], x, coeffs[1], y));
                        w.set(i, c, mix(ring, coeffs[2], x, coeffs[3], y));
                    }
                    row_ops.push(RowOp::Mix(t, i, coeffs));
                }
                for j in t + 1..cols {
                    let q = w.get(t, j) as i64;
                    if q == 0 {
                        continue;
                    }
                    let p = w.get(t, t) as i64;
                    let coeffs = if q % p == 0 {
                        [1, 0, r(-(q / p)), 1]
                    } else {
                        let (g, s, tt) = ext_gcd(p, q);
                        dirty = true;
                        [r(s), r(tt), r(-(q / g)), r(p / g)]
                    };
                    for rr in 0..rows {
                        let (x, y) = (w.get(rr, t), w.get(rr, j));
                        w.set(rr, t, mix(ring, coeffs[0], x, coeffs[1], y));
                        w.set(rr, j, mix(ring, coeffs[2], x, coeffs[3], y));
                    }
                    for rr in 0..cols {
                        let (x, y) = (v.get(rr, t), v.get(rr, j));
                        v.set(rr, t, mix(ring, coeffs[0], x, coeffs[1], y));
                        v.set(rr, j, mix(ring, coeffs[2], x, coeffs[3], y));
                    }
                }
                let clean = (t + 1..rows).all(|i| w.get(i, t) == 0)
                    && (t + 1..cols).all(|j| w.get(t, j) == 0);
                // a gcd step shrinks the pivot, so this terminates
                if clean || !dirty {
                    break;
                }
            }
        }
        let diag = (0..steps).map(|t| w.get(t, t)).collect();
        Diagonalization { diag, row_ops, v }
    }

    fn transform_rhs(&self, ring: &CoeffRing, b: &[u32]) -> Vec<u32> {
        let mut c = b.to_vec();
        for op in &self.row_ops {
            match *op {
                RowOp::Swap(p, q) => c.swap(p, q),
                RowOp::Mix(p, q, k) => {
                    let (x, y) = (c[p], c[q]);
                    c[p] = mix(ring, k[0], x, k[1], y);
                    c[q] = mix(ring, k[2], x, k[3], y);
                }
            }
        }
        c
    }
}

#[inline]
fn mix(ring: &CoeffRing, a: u32, x: u32, b: u32, y: u32) -> u32 {
    ring.add(ring.mul(a, x), ring.mul(b, y))
}

/// Brute-force solver; used as a test oracle.
pub fn solve_exhaustive(ring: &CoeffRing, a: &Matrix, b: &[u32]) -> Option<Vec<u32>> {
    let m = ring.modulus();
    let total = (m as u64).checked_pow(a.cols as u32)?;
    let mut x = vec![0u32; a.cols];
    for _ in 0..total {
        if a.apply(ring, &x).ok().as_deref() == Some(b) {
            return Some(x);
        }
        for xi in x.iter_mut() {
            *xi += 1;
            if *xi < m {
                break;
            }
            *xi = 0;
        }
    }
    None
}

/// A submodule of (ℤ/m)^dim given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    ring: CoeffRing,
    dim: usize,
    gens: Vec<Vec<u32>>,
}

impl Span {
    /// Drops zero vectors and generators already in the span of earlier ones.
    pub fn new(ring: CoeffRing, dim: usize, candidates: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut span = Span { ring, dim, gens: Vec::new() };
        for v in candidates {
            assert_eq!(v.len(), dim, "span generator has wrong length");
            if v.iter().all(|&c| c == 0) || span.contains(&v) {
                continue;
            }
            span.gens.push(v);
        }
        span
    }

    pub fn zero(ring: CoeffRing, dim: usize) -> Self {
        Span { ring, dim, gens: Vec::new() }
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(self.dim, &self.gens).expect("generator lengths checked")
    }

    pub fn coefficients(&self, v: &[u32]) -> Option<Vec<u32>> {
        if v.len() != self.dim {
            return None;
        }
        if self.gens.is_empty() {
            return v.iter().all(|&c| c == 0).then(Vec::new);
        }
        solve_linear_system(&self.ring, &self.matrix(), v).ok().flatten()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coefficients(v).is_some()
    }

    pub fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for (g, &c) in self.gens.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(g) {
                *o = self.ring.add(*o, self.ring.mul(c, x));
            }
        }
        out
    }

    /// All elements, sorted; errors past `budget`.
    pub fn elements(&self, budget: u64) -> Result<Vec<Vec<u32>>> {
        let m = self.ring.modulus() as u64;
        let bound = m.checked_pow(self.gens.len() as u32).unwrap_or(u64::MAX);
        if bound > budget {
            return Err(Error::capacity(format!(
                "submodule with {} generators may have {} elements, budget {}",
                self.gens.len(),
                bound,
                budget
            )));
        }
        let mut seen = HashSet::new();
        let mut coeffs = vec![0u32; self.gens.len()];
        for _ in 0..bound {
            seen.insert(self.combine(&coeffs));
            for c in coeffs.iter_mut() {
                *c += 1;
                if (*c as u64) < m {
                    break;
                }
                *c = 0;
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    pub fn sum(&self, other: &Span) -> Span {
        Span::new(self.ring, self.dim, self.gens.iter().chain(&other.gens).cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_arith() {
        let z4 = CoeffRing::new(4).unwrap();
        assert_eq!(z4.elem(2).add(&z4.elem(3)).unwrap().value(), 1);
        assert_eq!(z4.elem(2).mul(&z4.elem(2)).unwrap().value(), 0);
        assert_eq!(z4.elem(3).inverse().unwrap().value(), 3);
        assert!(z4.elem(2).inverse().is_none());
        let z5 = CoeffRing::new(5).unwrap();
        assert!(z4.elem(1).add(&z5.elem(1)).is_err());
    }

    #[test]
    fn ring_axioms_small_moduli() {
        for m in 2..=16 {
            let r = CoeffRing::new(m).unwrap();
            for a in r.elements() {
                assert_eq!(r.inverse(a).is_some(), gcd(a as u64, m as u64) == 1);
                if let Some(b) = r.inverse(a) {
                    assert_eq!(r.mul(a, b), 1 % m);
                }
                for b in r.elements() {
                    assert_eq!(r.add(a, b), r.add(b, a));
                    assert_eq!(r.mul(a, b), r.mul(b, a));
                    assert_eq!(r.add(r.sub(a, b), b), a);
                    for c in r.elements() {
                        assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
                        assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn spec_solve_examples() {
        let z4 = CoeffRing::new(4).unwrap();
        let a = Matrix::from_rows(&[vec![1]]).unwrap();
        assert_eq!(solve_linear_system(&z4, &a, &[0]).unwrap(), Some(vec![0]));
        let a = Matrix::from_rows(&[vec![2]]).unwrap();
        assert_eq!(solve_linear_system(&z4, &a, &[1]).unwrap(), None);
        let x = solve_linear_system(&z4, &a, &[2]).unwrap().unwrap();
        assert!(x == vec![1] || x == vec![3]);
        assert!(solve_linear_system(&z4, &a, &[1, 2]).is_err());
    }

    #[test]
    fn exhaustive_small_systems() {
        // every 2x2 system over Z/4 ...
        let r = CoeffRing::new(4).unwrap();
        for code in 0..4u32.pow(6) {
            let digits: Vec<u32> = (0..6).map(|k| (code / 4u32.pow(k)) % 4).collect();
            let a = Matrix::from_rows(&[digits[0..2].to_vec(), digits[2..4].to_vec()]).unwrap();
            let b = &digits[4..6];
            let fast = solve_linear_system(&r, &a, b).unwrap();
            let slow = solve_exhaustive(&r, &a, b);
            assert_eq!(fast.is_some(), slow.is_some(), "{a:?} {b:?}");
            if let Some(x) = fast {
                assert_eq!(a.apply(&r, &x).unwrap(), b);
            }
        }
    }

    #[test]
    fn det_integer_lift() {
        let r = CoeffRing::new(4).unwrap();
        let a = Matrix::from_rows(&[vec![1, 2], vec![3, 3]]).unwrap();
        assert_eq!(a.det_mod(&r).unwrap(), r.reduce(3 - 6));
        let b = Matrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(b.det_mod(&r).unwrap(), 3);
    }

    #[test]
    fn span_enumeration() {
        let r = CoeffRing::new(4).unwrap();
        let s = Span::new(r, 2, vec![vec![2, 0], vec![0, 1], vec![2, 1]]);
        assert_eq!(s.generators().len(), 2);
        assert_eq!(s.elements(100).unwrap().len(), 8);
        assert!(s.contains(&[2, 3]));
        assert!(!s.contains(&[1, 0]));
        assert!(s.elements(3).is_err());
    }

    proptest! {
        #[test]
        fn solver_agrees_with_exhaustive(
            m in 2u32..=4,
            rows in 1usize..=3,
            cols in 1usize..=3,
            seed in proptest::collection::vec(0u32..1000, 12),
        ) {
            let r = CoeffRing::new(m).unwrap();
            let data: Vec<u32> = seed[..rows * cols].iter().map(|v| v % m).collect();
            let a = Matrix { rows, cols, data };
            let b: Vec<u32> = seed[9..9 + rows].iter().map(|v| v % m).collect();
            let fast = solve_linear_system(&r, &a, &b).unwrap();
            let slow = solve_exhaustive(&r, &a, &b);
            prop_assert_eq!(fast.is_some(), slow.is_some());
            if let Some(x) = fast {
                prop_assert_eq!(a.apply(&r, &x).unwrap(), b);
            }
        }

        #[test]
        fn trivial_kernel_matches_brute_force(
            m in 2u32..=4,
            seed in proptest::collection::vec(0u32..1000, 6),
        ) {
            let r = CoeffRing::new(m).unwrap();
            let a = Matrix { rows: 3, cols: 2, data: seed.iter().map(|v| v % m).collect() };
            let mut nonzero_kernel = false;
            for x0 in 0..m {
                for x1 in 0..m {
                    if (x0, x1) != (0, 0) && a.apply(&r, &[x0, x1]).unwrap() == vec![0, 0, 0] {
                        nonzero_kernel = true;
                    }
                }
            }
            prop_assert_eq!(kernel_is_trivial(&r, &a), !nonzero_kernel);
        }
    }
}
