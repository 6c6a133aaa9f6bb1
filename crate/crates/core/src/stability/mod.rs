//! Unimodular columns, the sr and Λsr conditions, and the stability reductions.

mod injective;
mod reduce;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgElem;
use crate::coeff::Matrix;
use crate::error::{Error, Result};
use crate::oddform::{CornerCache, OddFormRing};
use crate::unitary::additive_generators;

pub use injective::{decomposition_a_check, injective_stability_check, DecompositionReport, InjectiveReport};
pub use reduce::{heisenberg_factor, reduce_to_smaller, HeisenbergFactor, ReductionCertificate};

/// Upper bound on the number of columns (or search candidates) scanned exhaustively.
pub const SCAN_BUDGET: u64 = 1 << 24;

/// A column (x_t) with x_t ∈ e_{row_t}·R·e_col.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularColumn {
    pub col: i32,
    pub entries: Vec<(i32, AlgElem)>,
}

impl UnimodularColumn {
    pub fn new(col: i32, entries: Vec<(i32, AlgElem)>) -> Self {
        UnimodularColumn { col, entries }
    }

    pub fn validate(&self, ring: &OddFormRing) -> Result<()> {
        for (row, x) in &self.entries {
            ring.alg().check_same(x)?;
            if !ring.in_corner(x, *row, self.col) {
                return Err(Error::precondition(format!("entry outside R_({row},{})", self.col)));
            }
        }
        Ok(())
    }
}

/// Witness y with Σ y_t x_t = e_col, each y_t ∈ R_(col, row_t).
pub fn is_right_unimodular(ring: &OddFormRing, x: &UnimodularColumn) -> Result<Option<Vec<AlgElem>>> {
    x.validate(ring)?;
    let target = ring.family().e(x.col).clone();
    Combiner::new(ring).solve(x.col, &x.entries, &target)
}

/// Solves Σ y_t x_t = target for y_t ∈ R_(d, row_t), caching generator lists.
pub(crate) struct Combiner<'a> {
    ring: &'a OddFormRing,
    gens: CornerCache,
}

impl<'a> Combiner<'a> {
    pub(crate) fn new(ring: &'a OddFormRing) -> Self {
        Combiner { ring, gens: Mutex::new(HashMap::new()) }
    }

    fn generators(&self, i: i32, j: i32) -> Result<Arc<Vec<AlgElem>>> {
        if let Some(g) = self.gens.lock().unwrap().get(&(i, j)) {
            return Ok(g.clone());
        }
        let g = Arc::new(additive_generators(self.ring, i, j)?);
        self.gens.lock().unwrap().insert((i, j), g.clone());
        Ok(g)
    }

    pub(crate) fn solve(&self, d: i32, entries: &[(i32, AlgElem)], target: &AlgElem) -> Result<Option<Vec<AlgElem>>> {
        let a = self.ring.alg();
        let mut cols = Vec::new();
        let mut owners = Vec::new();
        for (t, (row, x)) in entries.iter().enumerate() {
            for g in self.generators(d, *row)?.iter() {
                cols.push(a.mul(g, x).into_coords());
                owners.push((t, g.clone()));
            }
        }
        if cols.is_empty() {
            return Ok(target.is_zero().then(|| vec![a.zero(); entries.len()]));
        }
        let m = Matrix::from_columns(a.dim(), &cols)?;
        let Some(lam) = crate::coeff::solve_linear_system(&a.ring(), &m, target.coords())? else {
            return Ok(None);
        };
        let mut y = vec![a.zero(); entries.len()];
        for ((t, g), c) in owners.iter().zip(lam) {
            if c != 0 {
                y[*t] = a.add(&y[*t], &a.scale(c, g));
            }
        }
        Ok(Some(y))
    }

    pub(crate) fn unimodular(&self, col: i32, entries: &[(i32, AlgElem)]) -> Result<bool> {
        let target = self.ring.family().e(col).clone();
        Ok(self.solve(col, entries, &target)?.is_some())
    }
}

/// Outcome of an exhaustive sr/Λsr scan; `holds` is None when the condition does not apply.
#[derive(Clone, Debug, Serialize)]
pub struct RankCheck {
    pub property: String,
    pub k: usize,
    pub holds: Option<bool>,
    pub columns: u64,
    pub unimodular: u64,
    pub counterexample: Option<UnimodularColumn>,
    pub note: Option<String>,
}

impl RankCheck {
    fn trivial(property: &str, k: usize, holds: Option<bool>, note: &str) -> Self {
        RankCheck {
            property: property.to_string(),
            k,
            holds,
            columns: 0,
            unimodular: 0,
            counterexample: None,
            note: Some(note.to_string()),
        }
    }
}

pub(crate) fn mixed_radix(mut idx: u64, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (o, &r) in out.iter_mut().zip(radices).rev() {
        *o = (idx % r as u64) as usize;
        idx /= r as u64;
    }
    out
}

pub(crate) fn radix_total(radices: &[usize], what: &str) -> Result<u64> {
    let mut total: u64 = 1;
    for &r in radices {
        total = total
            .checked_mul(r as u64)
            .filter(|&t| t <= SCAN_BUDGET)
            .ok_or_else(|| Error::capacity(format!("{what} exceeds {SCAN_BUDGET} candidates")))?;
    }
    Ok(total)
}

/// Unimodularity of k-tuples in R₁, tabulated by mixed-radix index.
struct TupleTable {
    index: HashMap<AlgElem, usize>,
    table: Vec<bool>,
    base: usize,
}

impl TupleTable {
    fn new(comb: &Combiner, r1: &[AlgElem], k: usize) -> Result<Self> {
        let radices = vec![r1.len(); k];
        let total = radix_total(&radices, "R₁ tuple table")?;
        let table = (0..total)
            .into_par_iter()
            .map(|idx| {
                let entries: Vec<(i32, AlgElem)> =
                    mixed_radix(idx, &radices).into_iter().map(|d| (1, r1[d].clone())).collect();
                comb.unimodular(1, &entries)
            })
            .collect::<Result<Vec<bool>>>()?;
        let index = r1.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Ok(TupleTable { index, table, base: r1.len() })
    }

    fn lookup(&self, xs: &[AlgElem]) -> bool {
        let mut idx = 0usize;
        for x in xs {
            idx = idx * self.base + self.index[x];
        }
        self.table[idx]
    }
}

fn check_family_rank(ring: &OddFormRing) -> Result<()> {
    if ring.rank() == 0 {
        return Err(Error::precondition("rank-0 family has no η₁ corner"));
    }
    Ok(())
}

enum Verdict {
    Skip,
    Good,
    Bad,
}

fn summarize(property: &str, k: usize, verdicts: Vec<Verdict>, column: impl Fn(u64) -> UnimodularColumn) -> RankCheck {
    let columns = verdicts.len() as u64;
    let unimodular = verdicts.iter().filter(|v| !matches!(v, Verdict::Skip)).count() as u64;
    let bad = verdicts.iter().position(|v| matches!(v, Verdict::Bad));
    RankCheck {
        property: property.to_string(),
        k,
        holds: Some(bad.is_none()),
        columns,
        unimodular,
        counterexample: bad.map(|b| column(b as u64)),
        note: None,
    }
}

/// sr(R₁) ≤ k − 1: every unimodular (x₁..x_k) in R₁ shortens to (x_i + a_i x_k)_{i<k}.
pub fn sr_at_most(ring: &OddFormRing, k: usize) -> Result<RankCheck> {
    const P: &str = "sr";
    check_family_rank(ring)?;
    let r1 = ring.corner_elements(1, 1)?;
    if r1.len() == 1 {
        return Ok(RankCheck::trivial(P, k, Some(true), "R₁ = 0"));
    }
    if k < 2 {
        return Ok(RankCheck::trivial(P, k, None, "not applicable below k = 2"));
    }
    let a = ring.alg();
    let comb = Combiner::new(ring);
    let long = TupleTable::new(&comb, &r1, k)?;
    let short = TupleTable::new(&comb, &r1, k - 1)?;
    let radices = vec![r1.len(); k];
    let total = radix_total(&radices, "sr scan")?;
    let shifts = radix_total(&vec![r1.len(); k - 1], "sr shortening")?;
    let column = |idx: u64| -> Vec<AlgElem> { mixed_radix(idx, &radices).into_iter().map(|d| r1[d].clone()).collect() };
    let verdicts: Vec<Verdict> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let xs = column(idx);
            if !long.lookup(&xs) {
                return Verdict::Skip;
            }
            let found = (0..shifts).any(|s| {
                let ys: Vec<AlgElem> = mixed_radix(s, &radices[..k - 1])
                    .into_iter()
                    .zip(&xs)
                    .map(|(d, x)| a.add(x, &a.mul(&r1[d], &xs[k - 1])))
                    .collect();
                short.lookup(&ys)
            });
            if found {
                Verdict::Good
            } else {
                Verdict::Bad
            }
        })
        .collect();
    Ok(summarize(P, k, verdicts, |idx| {
        UnimodularColumn::new(1, column(idx).into_iter().map(|x| (1, x)).collect())
    }))
}

/// Λsr ≤ k − 1 for the pairs η₁, η₋₁, including the sr(R₁) ≤ k − 1 clause.
pub fn lambda_sr_at_most(ring: &OddFormRing, k: usize) -> Result<RankCheck> {
    const P: &str = "Λsr";
    check_family_rank(ring)?;
    let r1 = ring.corner_elements(1, 1)?;
    if r1.len() == 1 {
        return Ok(RankCheck::trivial(P, k, Some(true), "R₁ = 0"));
    }
    if k < 2 {
        return Ok(RankCheck::trivial(P, k, Some(false), "Λsr = 0 only for R₁ = 0"));
    }
    let sr = sr_at_most(ring, k)?;
    if sr.holds == Some(false) {
        return Ok(RankCheck { property: P.to_string(), note: Some("sr clause fails".into()), ..sr });
    }
    let a = ring.alg();
    let comb = Combiner::new(ring);
    let table = TupleTable::new(&comb, &r1, k)?;
    let rm = ring.corner_elements(-1, 1)?;
    let rp = ring.corner_elements(1, -1)?;
    let mut dev = Vec::new();
    for w in rp.iter() {
        if ring.even_part_membership(w)? {
            dev.push(w.clone());
        }
    }
    // columns: x₋₁..x₋ₖ then x₁..xₖ
    let mut radices = vec![rm.len(); k];
    radices.extend(std::iter::repeat_n(r1.len(), k));
    let total = radix_total(&radices, "Λsr scan")?;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut mradices = vec![rp.len(); pairs.len()];
    mradices.extend(std::iter::repeat_n(dev.len(), k));
    let mtotal = radix_total(&mradices, "Λsr matrix search")?;
    let column = |idx: u64| -> (Vec<AlgElem>, Vec<AlgElem>) {
        let d = mixed_radix(idx, &radices);
        let neg = d[..k].iter().map(|&t| rm[t].clone()).collect();
        let pos = d[k..].iter().map(|&t| r1[t].clone()).collect();
        (neg, pos)
    };
    let verdicts = (0..total)
        .into_par_iter()
        .map(|idx| -> Result<Verdict> {
            let (neg, pos) = column(idx);
            let mut entries: Vec<(i32, AlgElem)> = neg.iter().map(|x| (-1, x.clone())).collect();
            entries.extend(pos.iter().map(|x| (1, x.clone())));
            if !comb.unimodular(1, &entries)? {
                return Ok(Verdict::Skip);
            }
            for m in 0..mtotal {
                let d = mixed_radix(m, &mradices);
                // mat[i][j] = a_{i+1, −(j+1)}
                let mut mat = vec![vec![a.zero(); k]; k];
                for (p, &(i, j)) in pairs.iter().enumerate() {
                    let x = &rp[d[p]];
                    mat[i][j] = x.clone();
                    mat[j][i] = a.neg(&a.conj(x));
                }
                for i in 0..k {
                    mat[i][i] = dev[d[pairs.len() + i]].clone();
                }
                let ys: Vec<AlgElem> = (0..k)
                    .map(|i| (0..k).fold(pos[i].clone(), |acc, j| a.add(&acc, &a.mul(&mat[i][j], &neg[j]))))
                    .collect();
                if table.lookup(&ys) {
                    return Ok(Verdict::Good);
                }
            }
            Ok(Verdict::Bad)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(P, k, verdicts, |idx| {
        let (neg, pos) = column(idx);
        let mut entries: Vec<(i32, AlgElem)> = neg.into_iter().map(|x| (-1, x)).collect();
        entries.extend(pos.into_iter().map(|x| (1, x)));
        UnimodularColumn::new(1, entries)
    }))
}

/// The reformulation at k = rank: every unimodular x ∈ R^ev_{*1} admits a unitary
/// β ∈ e₊Re₋ with e₊(x + βx) unimodular.
pub fn equivalent_lsr_check(ring: &OddFormRing) -> Result<RankCheck> {
    const P: &str = "Λsr (column form)";
    check_family_rank(ring)?;
    let n = ring.rank();
    let a = ring.alg();
    let fam = ring.family();
    let idx = ring.view_indices(n);
    let corners = idx
        .iter()
        .map(|&i| ring.corner_elements(i, 1))
        .collect::<Result<Vec<_>>>()?;
    let radices: Vec<usize> = corners.iter().map(|c| c.len()).collect();
    let total = radix_total(&radices, "column scan")?;
    let span = a.corner_basis(&a.lift(&fam.e_plus(a)), &a.lift(&fam.e_minus(a)))?;
    let betas: Vec<AlgElem> = span
        .elements(SCAN_BUDGET)?
        .into_iter()
        .map(|v| a.elem(v))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|b| ring.is_unitary_beta(b))
        .collect();
    let comb = Combiner::new(ring);
    let column = |t: u64| -> Vec<(i32, AlgElem)> {
        mixed_radix(t, &radices).into_iter().zip(idx.iter().zip(&corners)).map(|(d, (&i, c))| (i, c[d].clone())).collect()
    };
    let verdicts = (0..total)
        .into_par_iter()
        .map(|t| -> Result<Verdict> {
            let entries = column(t);
            if !comb.unimodular(1, &entries)? {
                return Ok(Verdict::Skip);
            }
            let x = entries.iter().fold(a.zero(), |acc, (_, y)| a.add(&acc, y));
            for b in &betas {
                let y = a.add(&x, &a.mul(b, &x));
                let pos: Vec<(i32, AlgElem)> = idx
                    .iter()
                    .filter(|&&i| i > 0)
                    .map(|&i| (i, a.lmul(&a.lift(fam.e(i)), &y)))
                    .collect();
                if comb.unimodular(1, &pos)? {
                    return Ok(Verdict::Good);
                }
            }
            Ok(Verdict::Bad)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(P, n, verdicts, |t| UnimodularColumn::new(1, column(t))))
}

#[cfg(test)]
mod tests;
