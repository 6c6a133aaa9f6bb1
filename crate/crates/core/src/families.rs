//! The four classical odd form algebras, their defining representations and
//! brute-force classical-group oracles.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, AlgebraDescriptor};
use crate::coeff::{CoeffRing, Matrix};
use crate::error::{Error, Result};
use crate::oddform::{Delta0Generator, HyperbolicFamily, OddFormRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Linear,
    Symplectic,
    EvenOrthogonal,
    OddOrthogonal,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Linear,
        FamilyKind::Symplectic,
        FamilyKind::EvenOrthogonal,
        FamilyKind::OddOrthogonal,
    ];

    pub fn slug(&self) -> &'static str {
        match self {
            FamilyKind::Linear => "linear",
            FamilyKind::Symplectic => "symplectic",
            FamilyKind::EvenOrthogonal => "even-orth",
            FamilyKind::OddOrthogonal => "odd-orth",
        }
    }

    /// Indices i of the defining module, in coordinate order.
    pub fn module_indices(&self, n: usize) -> Vec<i32> {
        let n = n as i32;
        match self {
            FamilyKind::Linear => (1..=n).collect(),
            FamilyKind::Symplectic | FamilyKind::EvenOrthogonal => (-n..=n).filter(|&i| i != 0).collect(),
            FamilyKind::OddOrthogonal => (-n..=n).collect(),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(FamilyKind::Linear),
            "symplectic" => Ok(FamilyKind::Symplectic),
            "even-orth" | "even-orthogonal" => Ok(FamilyKind::EvenOrthogonal),
            "odd-orth" | "odd-orthogonal" => Ok(FamilyKind::OddOrthogonal),
            _ => Err(Error::input(format!("unknown family `{s}`"))),
        }
    }
}

fn sign(i: i32) -> i64 {
    if i > 0 {
        1
    } else {
        -1
    }
}

fn basis_indices(kind: FamilyKind, n: usize) -> Vec<(i32, i32)> {
    let n = n as i32;
    let all: Vec<i32> = (-n..=n).collect();
    let mut out = Vec::new();
    for &i in &all {
        for &j in &all {
            let keep = match kind {
                FamilyKind::Linear => i != 0 && j != 0 && (i > 0) == (j > 0),
                FamilyKind::Symplectic | FamilyKind::EvenOrthogonal => i != 0 && j != 0,
                FamilyKind::OddOrthogonal => true,
            };
            if keep {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn build_example(kind: FamilyKind, n: usize, modulus: u32) -> Result<OddFormRing> {
    if n == 0 {
        return Err(Error::precondition("rank must be at least 1"));
    }
    let ring = CoeffRing::new(modulus)?;
    let idx = basis_indices(kind, n);
    let pos = |p: (i32, i32)| idx.iter().position(|&q| q == p);
    let labels: Vec<String> = idx.iter().map(|(i, j)| format!("e({i},{j})")).collect();
    let mut prods = Vec::new();
    for (a, &(i, j)) in idx.iter().enumerate() {
        for (b, &(j2, k)) in idx.iter().enumerate() {
            if j == j2 {
                let c = if j == 0 { 2 } else { 1 };
                prods.push((a, b, pos((i, k)).expect("closed index set"), c));
            }
        }
    }
    let conj: Vec<(usize, usize, u32)> = idx
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| {
            let c = match kind {
                FamilyKind::Symplectic => ring.reduce(sign(i) * sign(j)),
                _ => 1,
            };
            (a, pos((-j, -i)).expect("closed under involution"), c)
        })
        .collect();
    let d = idx.len();
    let diag_unit = |half: Option<u32>| {
        let mut v = vec![0u32; d];
        for (a, &(i, j)) in idx.iter().enumerate() {
            if i == j {
                v[a] = if i == 0 { half.unwrap_or(0) } else { 1 };
            }
        }
        v
    };
    let unit = match kind {
        FamilyKind::OddOrthogonal => ring.inverse(2).map(|h| diag_unit(Some(h))),
        _ => Some(diag_unit(None)),
    };
    let alg = AlgebraDescriptor::from_sparse(ring, labels, prods, conj, unit)?.with_indices(idx.clone());
    let unit_at = |i: i32, j: i32| alg.basis(pos((i, j)).unwrap());
    let ni = n as i32;
    let e: Vec<AlgElem> = (-ni..=ni).filter(|&i| i != 0).map(|i| unit_at(i, i)).collect();
    let free: Vec<AlgElem> = (1..=ni)
        .flat_map(|i| (1..=ni).map(move |j| (i, j)))
        .map(|(i, j)| unit_at(i, j))
        .collect();
    let family = HyperbolicFamily::new(n, e, Some(free))?;
    let zero = alg.zero();
    let gens = match kind {
        FamilyKind::Symplectic => (-ni..=ni)
            .filter(|&i| i != 0)
            .map(|i| Delta0Generator {
                index: i,
                pi: zero.clone(),
                rho_linear: unit_at(-i, i),
                rho_quadratic: zero.clone(),
            })
            .collect(),
        FamilyKind::OddOrthogonal => (-ni..=ni)
            .map(|i| Delta0Generator {
                index: i,
                pi: unit_at(0, i),
                rho_linear: zero.clone(),
                rho_quadratic: alg.neg(&unit_at(-i, i)),
            })
            .collect(),
        FamilyKind::Linear | FamilyKind::EvenOrthogonal => Vec::new(),
    };
    let name = format!("{kind} n={n} over {}", ring.label());
    OddFormRing::presented(alg, family, gens, name)
}

/// Matrix of α(g) = 1 + β on the defining module.
pub fn matrix_rep(kind: FamilyKind, ring: &OddFormRing, beta: &AlgElem) -> Result<Matrix> {
    let a = ring.alg();
    a.check_same(beta)?;
    let idx = a
        .indices()
        .ok_or_else(|| Error::precondition("representation needs an indexed matrix-unit basis"))?;
    let n = ring.rank();
    let rows = kind.module_indices(n);
    let at = |i: i32| rows.iter().position(|&r| r == i);
    let k = a.ring();
    let mut m = Matrix::identity(rows.len());
    for (t, &(i, j)) in idx.iter().enumerate() {
        let c = beta.coords()[t];
        if c == 0 {
            continue;
        }
        let (Some(r), Some(s)) = (at(i), at(j)) else { continue };
        let c = if kind == FamilyKind::OddOrthogonal && j == 0 { k.mul(2, c) } else { c };
        m.set(r, s, k.add(m.get(r, s), c));
    }
    Ok(m)
}

/// Invertible matrices over ℤ/m preserving the defining form of `kind`.
pub fn classical_oracle(kind: FamilyKind, n: usize, modulus: u32, budget: u64) -> Result<Vec<Matrix>> {
    let k = CoeffRing::new(modulus)?;
    let rows = kind.module_indices(n);
    let dim = rows.len();
    let per_col = (modulus as u64).checked_pow(dim as u32).unwrap_or(u64::MAX);
    if per_col > budget {
        return Err(Error::capacity(format!("{per_col} candidate columns exceed budget {budget}")));
    }
    let columns: Vec<Vec<u32>> = (0..per_col)
        .map(|code| {
            let mut c = code;
            (0..dim)
                .map(|_| {
                    let v = (c % modulus as u64) as u32;
                    c /= modulus as u64;
                    v
                })
                .collect()
        })
        .collect();
    let form = Form { kind, rows: rows.clone(), k };
    let unit_vec = |a: usize| {
        let mut v = vec![0; dim];
        v[a] = 1;
        v
    };
    let targets: Vec<Vec<u32>> = (0..dim).map(unit_vec).collect();
    let first: Vec<&Vec<u32>> = columns.iter().filter(|c| form.column_ok(c, &targets[0])).collect();
    let found: Vec<Vec<Matrix>> = first
        .par_iter()
        .map(|c0| {
            let mut out = Vec::new();
            let mut chosen = vec![(*c0).clone()];
            extend(&form, &columns, &targets, &mut chosen, &mut out);
            out
        })
        .collect();
    let mut all: Vec<Matrix> = found.into_iter().flatten().collect();
    if all.len() as u64 > budget {
        return Err(Error::capacity("oracle group exceeds budget"));
    }
    all.sort();
    Ok(all)
}

struct Form {
    kind: FamilyKind,
    rows: Vec<i32>,
    k: CoeffRing,
}

impl Form {
    fn at(&self, i: i32) -> usize {
        self.rows.iter().position(|&r| r == i).unwrap()
    }

    fn bilinear(&self, x: &[u32], y: &[u32]) -> u32 {
        let k = &self.k;
        let mut s = 0;
        let n = self.rows.iter().copied().max().unwrap_or(0);
        for i in 1..=n {
            let (p, q) = (self.at(i), self.at(-i));
            match self.kind {
                FamilyKind::Symplectic => {
                    s = k.add(s, k.sub(k.mul(x[p], y[q]), k.mul(x[q], y[p])));
                }
                _ => s = k.add(s, k.add(k.mul(x[p], y[q]), k.mul(x[q], y[p]))),
            }
        }
        if self.kind == FamilyKind::OddOrthogonal {
            let z = self.at(0);
            s = k.add(s, k.mul(2, k.mul(x[z], y[z])));
        }
        s
    }

    fn quadratic(&self, x: &[u32]) -> u32 {
        let k = &self.k;
        let n = self.rows.iter().copied().max().unwrap_or(0);
        let mut s = (1..=n).fold(0, |s, i| k.add(s, k.mul(x[self.at(i)], x[self.at(-i)])));
        if self.kind == FamilyKind::OddOrthogonal {
            let z = x[self.at(0)];
            s = k.add(s, k.mul(z, z));
        }
        s
    }

    fn column_ok(&self, col: &[u32], target: &[u32]) -> bool {
        match self.kind {
            FamilyKind::Linear | FamilyKind::Symplectic => true,
            _ => self.quadratic(col) == self.quadratic(target),
        }
    }

    fn pair_ok(&self, a: &[u32], b: &[u32], ta: &[u32], tb: &[u32]) -> bool {
        match self.kind {
            FamilyKind::Linear => true,
            _ => self.bilinear(a, b) == self.bilinear(ta, tb),
        }
    }
}

fn extend(form: &Form, columns: &[Vec<u32>], targets: &[Vec<u32>], chosen: &mut Vec<Vec<u32>>, out: &mut Vec<Matrix>) {
    let dim = targets.len();
    let a = chosen.len();
    if a == dim {
        let mut m = Matrix::zeros(dim, dim);
        for (j, col) in chosen.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        if form.k.is_unit(m.det_mod(&form.k).unwrap()) {
            out.push(m);
        }
        return;
    }
    for c in columns {
        if !form.column_ok(c, &targets[a]) {
            continue;
        }
        if (0..a).all(|b| form.pair_ok(&chosen[b], c, &targets[b], &targets[a])) {
            chosen.push(c.clone());
            extend(form, columns, targets, chosen, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_algebra_axioms;

    #[test]
    fn dimensions() {
        for n in 1..=3 {
            assert_eq!(build_example(FamilyKind::Linear, n, 2).unwrap().alg().dim(), 2 * n * n);
            assert_eq!(build_example(FamilyKind::Symplectic, n, 2).unwrap().alg().dim(), 4 * n * n);
            assert_eq!(build_example(FamilyKind::EvenOrthogonal, n, 2).unwrap().alg().dim(), 4 * n * n);
            assert_eq!(
                build_example(FamilyKind::OddOrthogonal, n, 2).unwrap().alg().dim(),
                (2 * n + 1) * (2 * n + 1)
            );
        }
    }

    #[test]
    fn spec_structure_constants() {
        let r = build_example(FamilyKind::EvenOrthogonal, 2, 2).unwrap();
        let a = r.alg();
        let e = |i, j| a.basis(a.index_of(i, j).unwrap());
        assert_eq!(a.mul(&e(1, 2), &e(2, 1)), e(1, 1));
        let r = build_example(FamilyKind::OddOrthogonal, 1, 4).unwrap();
        let a = r.alg();
        let e = |i, j| a.basis(a.index_of(i, j).unwrap());
        assert_eq!(a.mul(&e(1, 0), &e(0, 1)), a.scale(2, &e(1, 1)));
        assert!(!a.is_unital());
        let r = build_example(FamilyKind::Symplectic, 2, 3).unwrap();
        let a = r.alg();
        let e = |i, j| a.basis(a.index_of(i, j).unwrap());
        assert_eq!(a.conj(&e(1, 2)), e(-2, -1));
        assert_eq!(a.conj(&e(1, -2)), a.neg(&e(2, -1)));
        assert!(check_algebra_axioms(a).is_clean());
    }

    #[test]
    fn odd_orth_unit_when_two_invertible() {
        let r = build_example(FamilyKind::OddOrthogonal, 1, 3).unwrap();
        assert!(r.alg().is_unital());
        assert!(check_algebra_axioms(r.alg()).is_clean());
    }

    #[test]
    fn oracle_orders() {
        assert_eq!(classical_oracle(FamilyKind::Symplectic, 2, 2, 1 << 20).unwrap().len(), 720);
        assert_eq!(classical_oracle(FamilyKind::EvenOrthogonal, 2, 2, 1 << 20).unwrap().len(), 72);
        assert_eq!(classical_oracle(FamilyKind::OddOrthogonal, 1, 3, 1 << 20).unwrap().len(), 48);
        assert_eq!(classical_oracle(FamilyKind::Linear, 2, 2, 1 << 20).unwrap().len(), 6);
        assert_eq!(classical_oracle(FamilyKind::EvenOrthogonal, 1, 2, 1 << 20).unwrap().len(), 2);
        assert!(classical_oracle(FamilyKind::Symplectic, 3, 3, 100).is_err());
    }

    #[test]
    fn parse_kinds() {
        for k in FamilyKind::ALL {
            assert_eq!(k.slug().parse::<FamilyKind>().unwrap(), k);
        }
        assert!("unitary".parse::<FamilyKind>().is_err());
    }
}
