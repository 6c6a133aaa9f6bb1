use std::collections::HashSet;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::AlgElem;
use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::oddform::{OddFormIdeal, OddFormRing};

use super::{dotplus_generators, TransvectionSpec, UnitaryElem};

pub const CLOSURE_BUDGET: usize = 1_000_000;
pub const ENUM_BUDGET: u64 = 1 << 24;

pub type Key = Box<[u64]>;

/// Bit-packs coordinate vectors, `per_word` residues to a u64.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Packer {
    bits: u32,
    dim: usize,
    per_word: usize,
}

impl Packer {
    pub fn new(ring: CoeffRing, dim: usize) -> Self {
        let bits = ring.bits().max(1);
        Packer { bits, dim, per_word: (64 / bits) as usize }
    }

    pub fn for_ring(ring: &OddFormRing) -> Self {
        Packer::new(ring.alg().ring(), ring.alg().dim())
    }

    pub fn words(&self) -> usize {
        self.dim.div_ceil(self.per_word).max(1)
    }

    pub fn encode(&self, x: &AlgElem) -> Key {
        let mut out = vec![0u64; self.words()];
        for (k, &c) in x.coords().iter().enumerate() {
            out[k / self.per_word] |= (c as u64) << ((k % self.per_word) as u32 * self.bits);
        }
        out.into_boxed_slice()
    }

    pub fn decode(&self, key: &[u64]) -> AlgElem {
        let mask = (1u64 << self.bits) - 1;
        let coords = (0..self.dim)
            .map(|k| ((key[k / self.per_word] >> ((k % self.per_word) as u32 * self.bits)) & mask) as u32)
            .collect();
        AlgElem::from_raw(coords)
    }
}

/// A finite subset of U(R, Δ), stored as sorted packed β-vectors.
#[derive(Clone, Debug)]
pub struct GroupSet {
    label: String,
    packer: Packer,
    keys: Vec<Key>,
}

#[derive(Serialize)]
struct Line<'a> {
    beta: &'a [u32],
}

impl GroupSet {
    pub fn from_keys(label: impl Into<String>, packer: Packer, mut keys: Vec<Key>) -> Self {
        keys.par_sort_unstable();
        keys.dedup();
        GroupSet { label: label.into(), packer, keys }
    }

    pub fn from_elements<'a>(
        label: impl Into<String>,
        packer: Packer,
        elems: impl IntoIterator<Item = &'a UnitaryElem>,
    ) -> Self {
        let keys = elems.into_iter().map(|g| packer.encode(g.beta())).collect();
        GroupSet::from_keys(label, packer, keys)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn packer(&self) -> Packer {
        self.packer
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn contains(&self, g: &UnitaryElem) -> bool {
        self.contains_key(&self.packer.encode(g.beta()))
    }

    pub fn contains_key(&self, k: &[u64]) -> bool {
        self.keys.binary_search_by(|x| (**x).cmp(k)).is_ok()
    }

    pub fn index_of(&self, g: &UnitaryElem) -> Option<usize> {
        let k = self.packer.encode(g.beta());
        self.keys.binary_search(&k).ok()
    }

    pub fn get(&self, idx: usize) -> UnitaryElem {
        UnitaryElem::from_beta_unchecked(self.packer.decode(&self.keys[idx]))
    }

    pub fn iter(&self) -> impl Iterator<Item = UnitaryElem> + '_ {
        self.keys.iter().map(|k| UnitaryElem::from_beta_unchecked(self.packer.decode(k)))
    }

    pub fn par_iter(&self) -> impl ParallelIterator<Item = UnitaryElem> + '_ {
        self.keys.par_iter().map(|k| UnitaryElem::from_beta_unchecked(self.packer.decode(k)))
    }

    pub fn filter(&self, label: impl Into<String>, pred: impl Fn(&UnitaryElem) -> bool + Sync) -> GroupSet {
        let keys = self
            .keys
            .par_iter()
            .filter(|k| pred(&UnitaryElem::from_beta_unchecked(self.packer.decode(k))))
            .cloned()
            .collect();
        GroupSet { label: label.into(), packer: self.packer, keys }
    }

    pub fn is_subset(&self, other: &GroupSet) -> bool {
        self.len() <= other.len() && self.keys.par_iter().all(|k| other.contains_key(k))
    }

    pub fn same_elements(&self, other: &GroupSet) -> bool {
        self.keys == other.keys
    }

    /// One JSON object per line: {"beta": [...]}.
    pub fn write_jsonl(&self, mut w: impl Write) -> Result<()> {
        for k in &self.keys {
            let b = self.packer.decode(k);
            let line = serde_json::to_string(&Line { beta: b.coords() }).map_err(|e| Error::internal(e.to_string()))?;
            writeln!(w, "{line}").map_err(|e| Error::input(e.to_string()))?;
        }
        Ok(())
    }
}

pub fn closure(ring: &OddFormRing, gens: &[UnitaryElem], budget: usize, label: &str) -> Result<GroupSet> {
    closure_with(ring, None, &[], gens, budget, label)
}

/// ⟨H, new⟩ where `base` = H is already closed under `old`.
pub fn closure_with(
    ring: &OddFormRing,
    base: Option<&GroupSet>,
    old: &[UnitaryElem],
    new: &[UnitaryElem],
    budget: usize,
    label: &str,
) -> Result<GroupSet> {
    let packer = Packer::for_ring(ring);
    let mut visited: HashSet<Key> = HashSet::new();
    let mut frontier: Vec<AlgElem> = Vec::new();
    match base {
        Some(h) => {
            visited.extend(h.keys.iter().cloned());
            let step: Vec<(Key, AlgElem)> = h
                .keys
                .par_iter()
                .flat_map_iter(|k| {
                    let g = UnitaryElem::from_beta_unchecked(packer.decode(k));
                    new.iter()
                        .map(move |s| ring.compose(&g, s).into_beta())
                        .map(|b| (packer.encode(&b), b))
                        .collect::<Vec<_>>()
                })
                .filter(|(k, _)| !visited.contains(k))
                .collect();
            absorb(&mut visited, &mut frontier, step);
        }
        None => {
            let id = ring.identity().into_beta();
            visited.insert(packer.encode(&id));
            frontier.push(id);
        }
    }
    let gens: Vec<&UnitaryElem> = old.iter().chain(new).collect();
    while !frontier.is_empty() {
        if visited.len() > budget {
            return Err(capacity(label, budget));
        }
        let step: Vec<(Key, AlgElem)> = frontier
            .par_iter()
            .flat_map_iter(|b| {
                let g = UnitaryElem::from_beta_unchecked(b.clone());
                gens.iter()
                    .map(|s| ring.compose(&g, s).into_beta())
                    .map(|b| (packer.encode(&b), b))
                    .collect::<Vec<_>>()
            })
            .filter(|(k, _)| !visited.contains(k))
            .collect();
        frontier.clear();
        absorb(&mut visited, &mut frontier, step);
    }
    if visited.len() > budget {
        return Err(capacity(label, budget));
    }
    Ok(GroupSet::from_keys(label, packer, visited.into_iter().collect()))
}

fn absorb(visited: &mut HashSet<Key>, frontier: &mut Vec<AlgElem>, step: Vec<(Key, AlgElem)>) {
    for (k, b) in step {
        if visited.insert(k) {
            frontier.push(b);
        }
    }
}

fn capacity(label: &str, budget: usize) -> Error {
    Error::capacity(format!("closure of {label} exceeds {budget} elements"))
}

/// Smallest subgroup containing `seeds` and normalized by `conjugators`; also returns its generating set.
pub fn normal_closure(
    ring: &OddFormRing,
    seeds: &[UnitaryElem],
    conjugators: &[UnitaryElem],
    budget: usize,
    label: &str,
) -> Result<(GroupSet, Vec<UnitaryElem>)> {
    let mut gens: Vec<UnitaryElem> = seeds.to_vec();
    let mut set = closure(ring, &gens, budget, label)?;
    let mut pending = gens.clone();
    while !pending.is_empty() {
        let mut fresh: Vec<UnitaryElem> = Vec::new();
        let mut fresh_keys = HashSet::new();
        for s in &pending {
            for t in conjugators {
                let c = ring.conjugate(t, s);
                if !set.contains(&c) && fresh_keys.insert(c.clone()) {
                    fresh.push(c);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        set = closure_with(ring, Some(&set), &gens, &fresh, budget, label)?;
        gens.extend(fresh.iter().cloned());
        pending = fresh;
    }
    Ok((set, gens))
}

/// U(m): all unitary β supported in the rank-m view, by exhaustive search.
pub fn enumerate_unitary(ring: &OddFormRing, m: usize, budget: u64) -> Result<GroupSet> {
    let a = ring.alg();
    let v = ring.family().view_idem(a, m);
    let span = a.corner_basis(&v, &v)?;
    let q = a.ring().modulus() as u64;
    let g = span.generators().len();
    let count = q.checked_pow(g as u32).filter(|&c| c <= budget).ok_or_else(|| {
        Error::capacity(format!(
            "enumerating U({m}) needs {q}^{g} candidates, budget {budget}"
        ))
    })?;
    let packer = Packer::for_ring(ring);
    let keys: Vec<Key> = (0..count)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut c = vec![0u32; g];
            for d in c.iter_mut() {
                *d = (idx % q) as u32;
                idx /= q;
            }
            let beta = AlgElem::from_raw(span.combine(&c));
            ring.is_unitary_beta(&beta).then(|| packer.encode(&beta))
        })
        .collect();
    Ok(GroupSet::from_keys(format!("U({m})"), packer, keys))
}

/// EU(m) generated inside the given ring by transvections with |i|, |j| ≤ m.
pub fn elementary_subgroup(ring: &OddFormRing, m: usize, budget: usize) -> Result<GroupSet> {
    let gens: Vec<UnitaryElem> = ring.elementary_generators(m)?.into_iter().map(|(_, g)| g).collect();
    closure(ring, &gens, budget, &format!("EU({m})"))
}

/// EU(m; I, Γ): normal closure in EU(m) of transvections with parameters in (I, Γ).
pub fn relative_elementary(
    ring: &OddFormRing,
    ideal: &OddFormIdeal,
    m: usize,
    budget: usize,
) -> Result<(GroupSet, Vec<UnitaryElem>)> {
    let idx = ring.view_indices(m);
    let mut seeds = Vec::new();
    let mut seen = HashSet::new();
    for &i in &idx {
        for &j in &idx {
            if i == j || i == -j {
                continue;
            }
            let elems: Vec<_> = ring
                .corner_elements(i, j)?
                .iter()
                .filter(|x| ideal.contains(x))
                .map(|x| x.coords().to_vec())
                .collect();
            let span = crate::coeff::Span::new(ring.alg().ring(), ring.alg().dim(), elems);
            for v in span.generators() {
                let x = AlgElem::from_raw(v.clone());
                let t = ring.transvection(&TransvectionSpec::Short { i, j, x })?;
                if seen.insert(t.clone()) {
                    seeds.push(t);
                }
            }
        }
        let mut gam = Vec::new();
        for u in ring.delta0(i)?.iter() {
            if ideal.in_gamma(ring, u)? {
                gam.push(u.clone());
            }
        }
        for u in dotplus_generators(ring, &gam) {
            let t = ring.transvection(&TransvectionSpec::Ultrashort { i, u })?;
            if !t.is_identity() && seen.insert(t.clone()) {
                seeds.push(t);
            }
        }
    }
    let conj: Vec<UnitaryElem> = ring.elementary_generators(m)?.into_iter().map(|(_, g)| g).collect();
    normal_closure(ring, &seeds, &conj, budget, &format!("EU({m}; I, Γ)"))
}
