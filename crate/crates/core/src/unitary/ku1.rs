use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::AlgElem;
use crate::error::{Error, Result};
use crate::oddform::{OddFormIdeal, OddFormRing};

use super::groupset::{elementary_subgroup, enumerate_unitary, relative_elementary, GroupSet, Key};
use super::UnitaryElem;

#[derive(Clone, Debug, Serialize)]
pub struct CosetRow {
    pub representative: AlgElem,
    pub size: usize,
    pub is_distinguished: bool,
}

/// U(n)/EU(n) as left cosets g·EU(n).
#[derive(Clone, Debug, Serialize)]
pub struct Ku1Table {
    pub ring: String,
    pub n: usize,
    pub u_order: usize,
    pub eu_order: usize,
    pub classes: Vec<CosetRow>,
    #[serde(skip)]
    class_of: HashMap<Key, usize>,
    #[serde(skip)]
    packer: super::Packer,
}

impl Ku1Table {
    pub fn order(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: &UnitaryElem) -> Option<usize> {
        self.class_of.get(&self.packer.encode(g.beta())).copied()
    }

    pub fn from_sets(ring: &OddFormRing, n: usize, u: &GroupSet, eu: &GroupSet) -> Result<Self> {
        if !eu.is_subset(u) {
            return Err(Error::internal("elementary subgroup not contained in the unitary group"));
        }
        let packer = u.packer();
        let mut class_of: HashMap<Key, usize> = HashMap::with_capacity(u.len());
        let eu_elems: Vec<UnitaryElem> = eu.iter().collect();
        let mut classes = Vec::new();
        for (idx, key) in u.keys().iter().enumerate() {
            if class_of.contains_key(key) {
                continue;
            }
            let g = u.get(idx);
            let c = classes.len();
            let coset: Vec<Key> = eu_elems.par_iter().map(|e| packer.encode(ring.compose(&g, e).beta())).collect();
            for k in coset {
                if !u.contains_key(&k) {
                    return Err(Error::internal("coset left the unitary group"));
                }
                class_of.insert(k, c);
            }
            classes.push(CosetRow { representative: g.beta().clone(), size: eu.len(), is_distinguished: c == 0 });
        }
        Ok(Ku1Table {
            ring: ring.name().to_string(),
            n,
            u_order: u.len(),
            eu_order: eu.len(),
            classes,
            class_of,
            packer,
        })
    }
}

pub fn ku1(ring: &OddFormRing, n: usize, enum_budget: u64, closure_budget: usize) -> Result<Ku1Table> {
    let u = enumerate_unitary(ring, n, enum_budget)?;
    let eu = elementary_subgroup(ring, n, closure_budget)?;
    Ku1Table::from_sets(ring, n, &u, &eu)
}

/// U(n; I, Γ) / EU(n; I, Γ).
pub fn ku1_relative(
    ring: &OddFormRing,
    ideal: &OddFormIdeal,
    n: usize,
    enum_budget: u64,
    closure_budget: usize,
) -> Result<Ku1Table> {
    let u = enumerate_unitary(ring, n, enum_budget)?;
    let u_rel = u.filter("U(n; I, Γ)", |g| {
        ideal.contains(g.beta()) && ideal.in_gamma(ring, &ring.gamma(g)).unwrap_or(false)
    });
    let (eu_rel, _) = relative_elementary(ring, ideal, n, closure_budget)?;
    Ku1Table::from_sets(ring, n, &u_rel, &eu_rel)
}

/// Stabilization map KU₁(n−1) → KU₁(n) read off from coset representatives.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityMaps {
    pub from_n: usize,
    pub to_n: usize,
    pub image: Vec<usize>,
    pub surjective: bool,
    pub injective: bool,
    pub unhit: Vec<usize>,
}

impl StabilityMaps {
    pub fn compute(ring: &OddFormRing, smaller: &Ku1Table, larger: &Ku1Table) -> Result<Self> {
        let mut image = Vec::with_capacity(smaller.order());
        for row in &smaller.classes {
            let g = ring.embed_from_smaller(&UnitaryElem::from_beta_unchecked(row.representative.clone()));
            let c = larger
                .class_of(&g)
                .ok_or_else(|| Error::internal("U(n−1) representative missing from U(n)"))?;
            image.push(c);
        }
        let mut hit = vec![false; larger.order()];
        for &c in &image {
            hit[c] = true;
        }
        let unhit: Vec<usize> = (0..larger.order()).filter(|&c| !hit[c]).collect();
        let mut sorted = image.clone();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(StabilityMaps {
            from_n: smaller.n,
            to_n: larger.n,
            surjective: unhit.is_empty(),
            injective: sorted.len() == image.len(),
            image,
            unhit,
        })
    }
}
