//! Unitary groups of special odd form rings, stored by β(g) = α(g) − 1.

mod checks;
mod groupset;
mod ku1;
mod relations;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, UnitizedElem};
use crate::error::{Error, Result};
use crate::oddform::{FormPair, OddFormRing};

pub use checks::{
    gluing_check, merge_check, odd_orth_group_check, perfectness_check, relativization_check, OddOrthReport,
    PerfectnessReport, RelativizationReport,
};
pub use groupset::{
    closure, closure_with, elementary_subgroup, enumerate_unitary, normal_closure, relative_elementary,
    GroupSet, Packer, CLOSURE_BUDGET, ENUM_BUDGET,
};
pub use ku1::{ku1, ku1_relative, CosetRow, Ku1Table, StabilityMaps};
pub use relations::{verify_transvection_relations, RelationOptions, RELATION_NAMES};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitaryElem {
    beta: AlgElem,
}

impl UnitaryElem {
    pub fn beta(&self) -> &AlgElem {
        &self.beta
    }

    pub fn into_beta(self) -> AlgElem {
        self.beta
    }

    pub fn is_identity(&self) -> bool {
        self.beta.is_zero()
    }

    pub(crate) fn from_beta_unchecked(beta: AlgElem) -> Self {
        UnitaryElem { beta }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransvectionSpec {
    Short { i: i32, j: i32, x: AlgElem },
    Ultrashort { i: i32, u: FormPair },
    Dilation { i: i32, a: AlgElem },
    DilationZero { beta: AlgElem },
}

impl TransvectionSpec {
    pub fn describe(&self, ring: &OddFormRing) -> String {
        let a = ring.alg();
        match self {
            TransvectionSpec::Short { i, j, x } => format!("T_({i},{j})({})", a.label_of(x)),
            TransvectionSpec::Ultrashort { i, u } => format!("T_{i}{}", ring.describe_pair(u)),
            TransvectionSpec::Dilation { i, a: x } => format!("D_{i}({})", a.label_of(x)),
            TransvectionSpec::DilationZero { beta } => format!("D_0(β = {})", a.label_of(beta)),
        }
    }
}

impl OddFormRing {
    pub fn identity(&self) -> UnitaryElem {
        UnitaryElem { beta: self.alg().zero() }
    }

    pub fn alpha(&self, g: &UnitaryElem) -> UnitizedElem {
        self.alg().one_plus(&g.beta)
    }

    /// γ(g) = (β(g), conj(β(g))).
    pub fn gamma(&self, g: &UnitaryElem) -> FormPair {
        FormPair { p: g.beta.clone(), r: self.alg().conj(&g.beta) }
    }

    /// β(gh) = β(g)β(h) + β(g) + β(h).
    pub fn compose(&self, g: &UnitaryElem, h: &UnitaryElem) -> UnitaryElem {
        let a = self.alg();
        let bb = a.mul(&g.beta, &h.beta);
        UnitaryElem { beta: a.add(&a.add(&bb, &g.beta), &h.beta) }
    }

    pub fn checked_compose(&self, g: &UnitaryElem, h: &UnitaryElem) -> Result<UnitaryElem> {
        self.alg().check_same(&g.beta)?;
        self.alg().check_same(&h.beta)?;
        let out = self.compose(g, h);
        if !self.is_unitary_beta(&out.beta) {
            return Err(Error::internal("product left the unitary group"));
        }
        Ok(out)
    }

    pub fn inverse(&self, g: &UnitaryElem) -> UnitaryElem {
        UnitaryElem { beta: self.alg().conj(&g.beta) }
    }

    /// [g, h] = g h g⁻¹ h⁻¹.
    pub fn commutator(&self, g: &UnitaryElem, h: &UnitaryElem) -> UnitaryElem {
        let gh = self.compose(g, h);
        let gi = self.inverse(g);
        let hi = self.inverse(h);
        self.compose(&self.compose(&gh, &gi), &hi)
    }

    /// g h g⁻¹.
    pub fn conjugate(&self, g: &UnitaryElem, h: &UnitaryElem) -> UnitaryElem {
        self.compose(&self.compose(g, h), &self.inverse(g))
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a UnitaryElem>) -> UnitaryElem {
        items.into_iter().fold(self.identity(), |acc, g| self.compose(&acc, g))
    }

    /// β conj(β) + β + conj(β) = conj(β) β + β + conj(β) = 0.
    pub fn unitarity_equations(&self, beta: &AlgElem) -> bool {
        let a = self.alg();
        let c = a.conj(beta);
        let s = a.add(beta, &c);
        a.add(&a.mul(beta, &c), &s).is_zero() && a.add(&a.mul(&c, beta), &s).is_zero()
    }

    pub fn is_unitary_beta(&self, beta: &AlgElem) -> bool {
        beta.dim() == self.alg().dim()
            && self.in_domain(beta)
            && self.unitarity_equations(beta)
            && self.delta_membership(&FormPair { p: beta.clone(), r: self.alg().conj(beta) })
    }

    pub fn unitary_membership(&self, beta: &AlgElem) -> Option<UnitaryElem> {
        self.is_unitary_beta(beta).then(|| UnitaryElem { beta: beta.clone() })
    }

    fn check_index(&self, i: i32) -> Result<()> {
        if i == 0 || i.unsigned_abs() as usize > self.rank() {
            return Err(Error::precondition(format!("index {i} outside ±1..±{}", self.rank())));
        }
        Ok(())
    }

    pub fn in_delta0(&self, u: &FormPair, i: i32) -> bool {
        let a = self.alg();
        let fam = self.family();
        let e0 = fam.e_zero(a);
        let ei = a.lift(fam.e(i));
        a.lmul(&e0, &u.p) == u.p && self.act(u, &ei) == *u && self.delta_membership(u)
    }

    pub fn transvection(&self, spec: &TransvectionSpec) -> Result<UnitaryElem> {
        let a = self.alg();
        let beta = match spec {
            TransvectionSpec::Short { i, j, x } => {
                self.check_index(*i)?;
                self.check_index(*j)?;
                if i == j || *i == -j {
                    return Err(Error::precondition(format!("short transvection needs i ≠ ±j, got ({i}, {j})")));
                }
                a.check_same(x)?;
                if !self.in_corner(x, *i, *j) {
                    return Err(Error::precondition(format!("parameter outside R_({i},{j})")));
                }
                a.sub(x, &a.conj(x))
            }
            TransvectionSpec::Ultrashort { i, u } => {
                self.check_index(*i)?;
                a.check_same(&u.p)?;
                a.check_same(&u.r)?;
                if !self.in_delta0(u, *i) {
                    return Err(Error::precondition(format!("parameter outside Δ⁰_{i}")));
                }
                a.sub(&a.add(&u.r, &u.p), &a.conj(&u.p))
            }
            TransvectionSpec::Dilation { i, a: x } => {
                self.check_index(*i)?;
                a.check_same(x)?;
                if !self.in_corner(x, *i, *i) {
                    return Err(Error::precondition(format!("parameter outside R_{i}")));
                }
                let inv = self.corner_unit_inverse(x, *i)?.ok_or_else(|| {
                    Error::precondition(format!("parameter is not a unit of R_{i}"))
                })?;
                a.sub(&a.add(x, &inv), &self.family().e_abs(a, *i))
            }
            TransvectionSpec::DilationZero { beta } => {
                a.check_same(beta)?;
                if !self.in_corner(beta, 0, 0) {
                    return Err(Error::precondition("D₀ parameter outside R₀"));
                }
                beta.clone()
            }
        };
        self.unitary_membership(&beta)
            .ok_or_else(|| Error::precondition(format!("{} is not unitary", spec.describe(self))))
    }

    /// conj(a)⁻¹ inside R_{−i}.
    fn corner_unit_inverse(&self, x: &AlgElem, i: i32) -> Result<Option<AlgElem>> {
        let a = self.alg();
        a.corner_inverse(&a.conj(x), &a.lift(self.family().e(-i)))
    }

    pub fn eval_word(&self, word: &[TransvectionSpec]) -> Result<UnitaryElem> {
        let mut g = self.identity();
        for s in word {
            g = self.compose(&g, &self.transvection(s)?);
        }
        Ok(g)
    }

    /// (γ⁰(g), γ°(g)).
    pub fn gamma_components(&self, g: &UnitaryElem) -> Result<(FormPair, FormPair)> {
        let a = self.alg();
        let g0 = self.delta_component(&self.gamma(g), 0)?;
        let ep = self.family().e_plus(a);
        let circ = self.dotplus(&g0, &self.phi(&a.mul(&ep, &g.beta)));
        Ok((g0, circ))
    }

    /// The view of g in U(m): β supported away from the pairs m+1..n.
    pub fn restrict_to_smaller(&self, g: &UnitaryElem, m: usize) -> Option<UnitaryElem> {
        let a = self.alg();
        let v = self.family().view_idem(a, m);
        (a.sandwich(&v, &g.beta, &v) == g.beta).then(|| g.clone())
    }

    pub fn embed_from_smaller(&self, g: &UnitaryElem) -> UnitaryElem {
        g.clone()
    }

    pub fn view_indices(&self, m: usize) -> Vec<i32> {
        let m = m.min(self.rank()) as i32;
        (-m..=m).filter(|&i| i != 0).collect()
    }

    /// Units a of R_i.
    pub fn corner_units(&self, i: i32) -> Result<Vec<AlgElem>> {
        let mut out = Vec::new();
        for x in self.corner_elements(i, i)?.iter() {
            if self.corner_unit_inverse(x, i)?.is_some() {
                out.push(x.clone());
            }
        }
        Ok(out)
    }

    /// U(R₀, Δ⁰₀) as β-vectors supported in R₀.
    pub fn unitary_zero_block(&self) -> Result<Vec<UnitaryElem>> {
        Ok(self
            .corner_elements(0, 0)?
            .iter()
            .filter_map(|b| self.unitary_membership(b))
            .collect())
    }

    /// Generating sets of T_ij(R_ij) and T_i(Δ⁰_i) for |i|, |j| ≤ m.
    pub fn elementary_generators(&self, m: usize) -> Result<Vec<(TransvectionSpec, UnitaryElem)>> {
        let idx = self.view_indices(m);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &i in &idx {
            for &j in &idx {
                if i == j || i == -j {
                    continue;
                }
                for x in additive_generators(self, i, j)? {
                    let spec = TransvectionSpec::Short { i, j, x };
                    let g = self.transvection(&spec)?;
                    if seen.insert(g.clone()) {
                        out.push((spec, g));
                    }
                }
            }
        }
        for &i in &idx {
            for u in dotplus_generators(self, &self.delta0(i)?) {
                let spec = TransvectionSpec::Ultrashort { i, u };
                let g = self.transvection(&spec)?;
                if !g.is_identity() && seen.insert(g.clone()) {
                    out.push((spec, g));
                }
            }
        }
        Ok(out)
    }
}

/// Generators of the additive group R_ij (inside the β-domain).
pub(crate) fn additive_generators(ring: &OddFormRing, i: i32, j: i32) -> Result<Vec<AlgElem>> {
    let a = ring.alg();
    let elems = ring.corner_elements(i, j)?;
    let span = crate::coeff::Span::new(a.ring(), a.dim(), elems.iter().map(|x| x.coords().to_vec()));
    Ok(span.generators().iter().map(|v| a.elem(v.clone()).expect("dimension")).collect())
}

/// A generating set of the finite group (elems, ∔).
pub(crate) fn dotplus_generators(ring: &OddFormRing, elems: &[FormPair]) -> Vec<FormPair> {
    let mut sub: HashSet<FormPair> = HashSet::new();
    sub.insert(ring.zero_pair());
    let mut gens = Vec::new();
    for x in elems {
        if sub.contains(x) {
            continue;
        }
        gens.push(x.clone());
        let mut frontier: Vec<FormPair> = sub.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                for g in &gens {
                    let y = ring.dotplus(f, g);
                    if sub.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
    }
    gens
}

#[cfg(test)]
mod tests;
