use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::AlgElem;
use crate::error::{Error, Result};
use crate::oddform::OddFormRing;
use crate::unitary::{closure, elementary_subgroup, GroupSet, TransvectionSpec, UnitaryElem};

use super::sr_at_most;

const EXCEPTION_CAP: usize = 16;

/// EU(n) ∩ U(n−1) against EU(n−1); `verdict` is set only when sr(R₁) ≤ n − 2 was verified.
#[derive(Clone, Debug, Serialize)]
pub struct InjectiveReport {
    pub n: usize,
    pub eu_order: usize,
    pub eu_smaller_order: usize,
    pub intersection_order: usize,
    pub equal: bool,
    pub hypothesis: Option<bool>,
    pub verdict: Option<bool>,
    pub exceptional: Vec<AlgElem>,
}

fn check_rank(ring: &OddFormRing, n: usize, least: usize) -> Result<()> {
    if n < least || n > ring.rank() {
        return Err(Error::precondition(format!("rank {n} outside {least}..={}", ring.rank())));
    }
    Ok(())
}

pub fn injective_stability_check(ring: &OddFormRing, n: usize, budget: usize) -> Result<InjectiveReport> {
    check_rank(ring, n, 2)?;
    let eu = elementary_subgroup(ring, n, budget)?;
    let small = elementary_subgroup(ring, n - 1, budget)?;
    let inter = eu.filter("EU(n) ∩ U(n−1)", |g| ring.restrict_to_smaller(g, n - 1).is_some());
    let equal = inter.same_elements(&small);
    let exceptional = inter
        .iter()
        .filter(|g| !small.contains(g))
        .take(EXCEPTION_CAP)
        .map(UnitaryElem::into_beta)
        .collect();
    let hypothesis = sr_at_most(ring, n - 1)?.holds;
    Ok(InjectiveReport {
        n,
        eu_order: eu.len(),
        eu_smaller_order: small.len(),
        intersection_order: inter.len(),
        equal,
        hypothesis,
        verdict: (hypothesis == Some(true)).then_some(equal),
        exceptional,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub eu_order: usize,
    pub a1_order: usize,
    pub a2_order: usize,
    pub a5_order: usize,
    pub product_order: usize,
    pub factors: bool,
}

fn subgroup(ring: &OddFormRing, specs: Vec<TransvectionSpec>, budget: usize, label: &str) -> Result<GroupSet> {
    let gens = specs.iter().map(|s| ring.transvection(s)).collect::<Result<Vec<_>>>()?;
    closure(ring, &gens, budget, label)
}

fn set_product(ring: &OddFormRing, x: &GroupSet, y: &GroupSet, budget: usize, label: &str) -> Result<GroupSet> {
    let ys: Vec<UnitaryElem> = y.iter().collect();
    if x.len().saturating_mul(ys.len()) > budget.saturating_mul(64) {
        return Err(Error::capacity(format!("product set {label} too large to form")));
    }
    let packer = x.packer();
    let keys = x
        .par_iter()
        .flat_map_iter(|a| ys.iter().map(move |b| packer.encode(ring.compose(&a, b).beta())).collect::<Vec<_>>())
        .collect();
    Ok(GroupSet::from_keys(label, x.packer(), keys))
}

/// EU(n) = A₁·A₂·A₅ as sets.
pub fn decomposition_a_check(ring: &OddFormRing, n: usize, budget: usize) -> Result<DecompositionReport> {
    check_rank(ring, n, 3)?;
    let l = n as i32;
    let idx = ring.view_indices(n);
    let shorts = |pred: &dyn Fn(i32, i32) -> bool| -> Result<Vec<TransvectionSpec>> {
        let mut out = Vec::new();
        for &i in &idx {
            for &j in &idx {
                if i != j && i != -j && pred(i, j) {
                    for x in crate::unitary::additive_generators(ring, i, j)? {
                        out.push(TransvectionSpec::Short { i, j, x });
                    }
                }
            }
        }
        Ok(out)
    };
    let ultras = |k: i32| -> Result<Vec<TransvectionSpec>> {
        Ok(ring.delta0(k)?.iter().map(|u| TransvectionSpec::Ultrashort { i: k, u: u.clone() }).collect())
    };
    let eu = elementary_subgroup(ring, n, budget)?;
    // A₁ = EU(n−1)·H_n
    let mut g1 = shorts(&|i, j| (i.abs() < l && j.abs() < l) || j == l)?;
    for k in idx.iter().filter(|k| k.abs() < l) {
        g1.extend(ultras(*k)?);
    }
    g1.extend(ultras(l)?);
    let a1 = subgroup(ring, g1, budget, "A1")?;
    let mut g2 = shorts(&|i, j| j == -l && i >= -1)?;
    g2.extend(ultras(-l)?);
    let a2 = subgroup(ring, g2, budget, "A2")?;
    let mut g5 = shorts(&|_, j| j >= 2)?;
    for k in 2..=l {
        g5.extend(ultras(k)?);
    }
    let a5 = subgroup(ring, g5, budget, "A5")?;
    let p12 = set_product(ring, &a1, &a2, budget, "A1·A2")?;
    let p = set_product(ring, &p12, &a5, budget, "A1·A2·A5")?;
    Ok(DecompositionReport {
        n,
        eu_order: eu.len(),
        a1_order: a1.len(),
        a2_order: a2.len(),
        a5_order: a5.len(),
        product_order: p.len(),
        factors: eu.is_subset(&p) && p.is_subset(&eu),
    })
}
