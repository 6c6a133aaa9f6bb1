use std::collections::{HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::algebra::{AlgElem, AlgebraDescriptor};
use crate::coeff::Span;
use crate::error::{Error, Result};

use super::{DeltaModel, FormPair, HyperbolicFamily, OddFormRing};

/// Element budget for Γ closures.
pub const GAMMA_BUDGET: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaMode {
    Min,
    Max,
    Explicit(Vec<FormPair>),
}

type ClosureCell = OnceLock<std::result::Result<Arc<HashSet<FormPair>>, Error>>;

/// An odd form ideal (I, Γ) of a fixed ring.
#[derive(Clone, Debug)]
pub struct OddFormIdeal {
    ideal: Span,
    mode: GammaMode,
    min_closure: Arc<ClosureCell>,
    closure: Arc<ClosureCell>,
}

impl OddFormIdeal {
    /// `gens` must additively span a two-sided, conj-closed ideal.
    pub fn new(ring: &OddFormRing, gens: Vec<AlgElem>, mode: GammaMode) -> Result<Self> {
        let a = ring.alg();
        for g in &gens {
            a.check_same(g)?;
        }
        let ideal = Span::new(a.ring(), a.dim(), gens.into_iter().map(AlgElem::into_coords));
        let basis = a.basis_elems();
        for g in ideal.generators() {
            let g = AlgElem::from_raw(g.clone());
            if !ideal.contains(a.conj(&g).coords()) {
                return Err(Error::precondition("ideal is not closed under the involution"));
            }
            for b in &basis {
                if !ideal.contains(a.mul(b, &g).coords()) || !ideal.contains(a.mul(&g, b).coords()) {
                    return Err(Error::precondition("ideal is not two-sided"));
                }
            }
        }
        let j = OddFormIdeal {
            ideal,
            mode,
            min_closure: Arc::default(),
            closure: Arc::default(),
        };
        if let GammaMode::Explicit(list) = &j.mode {
            for u in list {
                if !j.in_gamma_max(ring, u) {
                    return Err(Error::precondition(format!(
                        "explicit Γ generator {} is not in Γ_max",
                        ring.describe_pair(u)
                    )));
                }
            }
        }
        Ok(j)
    }

    /// c·R.
    pub fn principal(ring: &OddFormRing, c: u32, mode: GammaMode) -> Result<Self> {
        let a = ring.alg();
        let gens = a.basis_elems().iter().map(|b| a.scale(c, b)).collect();
        Self::new(ring, gens, mode)
    }

    pub fn zero(ring: &OddFormRing) -> Result<Self> {
        Self::new(ring, Vec::new(), GammaMode::Min)
    }

    pub fn unit(ring: &OddFormRing) -> Result<Self> {
        Self::new(ring, ring.alg().basis_elems(), GammaMode::Max)
    }

    pub fn span(&self) -> &Span {
        &self.ideal
    }

    pub fn mode(&self) -> &GammaMode {
        &self.mode
    }

    pub fn contains(&self, x: &AlgElem) -> bool {
        self.ideal.contains(x.coords())
    }

    pub fn in_gamma_max(&self, ring: &OddFormRing, u: &FormPair) -> bool {
        ring.delta_membership(u) && self.contains(&u.p) && self.contains(&u.r)
    }

    pub fn in_gamma_min(&self, ring: &OddFormRing, u: &FormPair) -> Result<bool> {
        let set = self
            .min_closure
            .get_or_init(|| close_gamma(ring, self.min_generators(ring)).map(Arc::new))
            .clone()?;
        Ok(set.contains(u))
    }

    pub fn in_gamma(&self, ring: &OddFormRing, u: &FormPair) -> Result<bool> {
        match &self.mode {
            GammaMode::Max => Ok(self.in_gamma_max(ring, u)),
            GammaMode::Min => self.in_gamma_min(ring, u),
            GammaMode::Explicit(list) => {
                let set = self
                    .closure
                    .get_or_init(|| {
                        let mut gens = self.min_generators(ring);
                        gens.extend(list.iter().cloned());
                        close_gamma(ring, gens).map(Arc::new)
                    })
                    .clone()?;
                Ok(set.contains(u))
            }
        }
    }

    /// The closure set of Γ when it is finite-closure based.
    pub fn gamma_elements(&self, ring: &OddFormRing) -> Result<Vec<FormPair>> {
        let gens = match &self.mode {
            GammaMode::Max => {
                return Err(Error::precondition("Γ_max is described by a predicate, not a closure"))
            }
            GammaMode::Min => self.min_generators(ring),
            GammaMode::Explicit(list) => {
                let mut g = self.min_generators(ring);
                g.extend(list.iter().cloned());
                g
            }
        };
        let mut v: Vec<FormPair> = close_gamma(ring, gens)?.into_iter().collect();
        v.sort();
        Ok(v)
    }

    /// g·x for Δ-generators g and x spanning I, plus φ(x).
    fn min_generators(&self, ring: &OddFormRing) -> Vec<FormPair> {
        let xs: Vec<AlgElem> = self.ideal.generators().iter().cloned().map(AlgElem::from_raw).collect();
        let mut out = Vec::new();
        for g in ring.delta_group_generators() {
            for x in &xs {
                out.push(ring.act_r(g, x));
            }
        }
        for x in &xs {
            out.push(ring.phi(x));
        }
        out
    }
}

/// Subgroup generated by the R-orbits of `gens`.
fn close_gamma(ring: &OddFormRing, gens: Vec<FormPair>) -> Result<HashSet<FormPair>> {
    let basis = ring.alg().basis_elems();
    let mut orbit: HashSet<FormPair> = HashSet::new();
    let mut queue: VecDeque<FormPair> = VecDeque::new();
    for g in gens {
        if !g.is_zero() && orbit.insert(g.clone()) {
            queue.push_back(g);
        }
    }
    while let Some(w) = queue.pop_front() {
        for b in &basis {
            let x = ring.act_r(&w, b);
            if !x.is_zero() && orbit.insert(x.clone()) {
                queue.push_back(x);
            }
        }
        if orbit.len() > GAMMA_BUDGET {
            return Err(Error::capacity("Γ generator orbit exceeds budget"));
        }
    }
    let mut orbit: Vec<FormPair> = orbit.into_iter().collect();
    orbit.sort();
    let zero = ring.zero_pair();
    let mut seen: HashSet<FormPair> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &orbit {
                let x = ring.dotplus(w, g);
                if seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        if seen.len() > GAMMA_BUDGET {
            return Err(Error::capacity(format!("Γ closure exceeds {GAMMA_BUDGET} elements")));
        }
        frontier = next;
    }
    Ok(seen)
}

/// Membership predicates for Γ_min and Γ_max of an ideal.
pub struct GammaBounds<'a> {
    ring: &'a OddFormRing,
    ideal: &'a OddFormIdeal,
}

impl GammaBounds<'_> {
    pub fn contains_min(&self, u: &FormPair) -> Result<bool> {
        self.ideal.in_gamma_min(self.ring, u)
    }

    pub fn contains_max(&self, u: &FormPair) -> bool {
        self.ideal.in_gamma_max(self.ring, u)
    }
}

pub fn gamma_bounds<'a>(ring: &'a OddFormRing, ideal: &'a OddFormIdeal) -> GammaBounds<'a> {
    GammaBounds { ring, ideal }
}

/// Fiber product R ×_I R inside R × R, with Δ ×_Γ Δ on pairs.
#[derive(Debug)]
pub struct DoubleData {
    base: OddFormRing,
    ideal: OddFormIdeal,
}

impl DoubleData {
    pub fn base(&self) -> &OddFormRing {
        &self.base
    }

    pub fn ideal(&self) -> &OddFormIdeal {
        &self.ideal
    }

    pub fn split(&self, x: &AlgElem) -> (AlgElem, AlgElem) {
        let d = self.base.alg().dim();
        let c = x.coords();
        (AlgElem::from_raw(c[..d].to_vec()), AlgElem::from_raw(c[d..].to_vec()))
    }

    pub fn join(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut v = x.coords().to_vec();
        v.extend_from_slice(y.coords());
        AlgElem::from_raw(v)
    }

    pub fn split_pair(&self, u: &FormPair) -> (FormPair, FormPair) {
        let (p1, p2) = self.split(&u.p);
        let (r1, r2) = self.split(&u.r);
        (FormPair { p: p1, r: r1 }, FormPair { p: p2, r: r2 })
    }

    pub fn join_pair(&self, u: &FormPair, v: &FormPair) -> FormPair {
        FormPair { p: self.join(&u.p, &v.p), r: self.join(&u.r, &v.r) }
    }

    /// d(x) = (x, x).
    pub fn diag(&self, x: &AlgElem) -> AlgElem {
        self.join(x, x)
    }

    /// p₁⁻¹ of an element of I: (x, 0).
    pub fn lift_first(&self, x: &AlgElem) -> AlgElem {
        self.join(x, &self.base.alg().zero())
    }

    pub fn p1(&self, x: &AlgElem) -> AlgElem {
        self.split(x).0
    }

    pub fn p2(&self, x: &AlgElem) -> AlgElem {
        self.split(x).1
    }

    pub(super) fn contains(&self, _ring: &OddFormRing, u: &FormPair) -> bool {
        let (u1, u2) = self.split_pair(u);
        self.base.delta_membership(&u1)
            && self.base.delta_membership(&u2)
            && self.ideal.in_gamma(&self.base, &self.base.dotsub(&u1, &u2)).unwrap_or(false)
    }
}

fn product_algebra(a: &AlgebraDescriptor) -> Result<AlgebraDescriptor> {
    let d = a.dim();
    let mut labels: Vec<String> = a.labels().iter().map(|l| format!("{l}@1")).collect();
    labels.extend(a.labels().iter().map(|l| format!("{l}@2")));
    let mut prods = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for (k, &c) in a.product_of_basis(i, j).coords().iter().enumerate() {
                if c != 0 {
                    prods.push((i, j, k, c));
                    prods.push((i + d, j + d, k + d, c));
                }
            }
        }
    }
    let mut conj = Vec::new();
    for c in 0..d {
        for (k, &v) in a.conj(&a.basis(c)).coords().iter().enumerate() {
            if v != 0 {
                conj.push((c, k, v));
                conj.push((c + d, k + d, v));
            }
        }
    }
    let unit = a.unit().map(|u| {
        let mut v = u.coords().to_vec();
        v.extend_from_slice(u.coords());
        v
    });
    AlgebraDescriptor::from_sparse(a.ring(), labels, prods, conj, unit)
}

/// The double (I⋊R, Γ⋊Δ), realized as the fiber product {(x, y) : x − y ∈ I}.
pub fn build_double(ring: &OddFormRing, ideal: &OddFormIdeal) -> Result<OddFormRing> {
    if ring.double_data().is_some() {
        return Err(Error::precondition("iterated doubles are not supported"));
    }
    let a = ring.alg();
    if ideal.span().dim() != a.dim() {
        return Err(Error::precondition("ideal belongs to a different ring"));
    }
    let prod = product_algebra(a)?;
    let data = DoubleData { base: ring.clone(), ideal: ideal.clone() };
    let fam = ring.family();
    let n = fam.rank();
    let e: Vec<AlgElem> = fam.indices().map(|i| data.diag(fam.e(i))).collect();
    let free = if fam.is_free() {
        let mut u = Vec::with_capacity(n * n);
        for i in 1..=n as i32 {
            for j in 1..=n as i32 {
                u.push(data.diag(&fam.unit(a, i, j).expect("free family")));
            }
        }
        Some(u)
    } else {
        None
    };
    let family = HyperbolicFamily::new(n, e, free)?;
    let zero = a.zero();
    let domain_gens = a
        .basis_elems()
        .iter()
        .map(|b| data.diag(b).into_coords())
        .chain(
            ideal
                .span()
                .generators()
                .iter()
                .map(|g| data.join(&AlgElem::from_raw(g.clone()), &zero).into_coords()),
        )
        .collect::<Vec<_>>();
    let domain = Span::new(a.ring(), 2 * a.dim(), domain_gens);
    let name = format!("double of {}", ring.name());
    Ok(OddFormRing::from_parts(
        Arc::new(prod),
        family,
        DeltaModel::Double(data),
        Some(domain),
        name,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_example, FamilyKind};

    #[test]
    fn gamma_extremes() {
        let r = build_example(FamilyKind::Symplectic, 1, 4).unwrap();
        let zero = OddFormIdeal::zero(&r).unwrap();
        let b = gamma_bounds(&r, &zero);
        let q = r.family().q(1).clone();
        assert!(!b.contains_max(&q));
        assert!(b.contains_max(&r.zero_pair()));
        assert_eq!(zero.gamma_elements(&r).unwrap(), vec![r.zero_pair()]);
        let unit = OddFormIdeal::unit(&r).unwrap();
        assert!(gamma_bounds(&r, &unit).contains_max(&q));
    }

    #[test]
    fn symplectic_z4_gamma_index() {
        let r = build_example(FamilyKind::Symplectic, 1, 4).unwrap();
        let j = OddFormIdeal::principal(&r, 2, GammaMode::Min).unwrap();
        let a = r.alg();
        let rho_delta0: HashSet<AlgElem> = (0..4u32.pow(4))
            .map(|code| a.elem((0..4).map(|k| (code >> (2 * k)) & 3).collect()).unwrap())
            .filter(|w| r.delta_membership(&FormPair { p: a.zero(), r: w.clone() }))
            .collect();
        let rho_max: HashSet<AlgElem> = rho_delta0.iter().filter(|w| j.contains(w)).cloned().collect();
        let rho_min: HashSet<AlgElem> = j
            .gamma_elements(&r)
            .unwrap()
            .into_iter()
            .filter(|u| u.p.is_zero())
            .map(|u| u.r)
            .collect();
        assert_eq!(rho_delta0.len(), 64);
        assert_eq!(rho_max.len() / rho_min.len(), 4);
        assert!(rho_min.is_subset(&rho_max));
    }

    #[test]
    fn invalid_ideal_rejected() {
        let r = build_example(FamilyKind::Symplectic, 1, 2).unwrap();
        let a = r.alg();
        let e11 = a.basis(a.index_of(1, 1).unwrap());
        assert!(OddFormIdeal::new(&r, vec![e11], GammaMode::Max).is_err());
        let bad = r.family().q(1).clone();
        let unit = OddFormIdeal::principal(&r, 1, GammaMode::Explicit(vec![bad]));
        assert!(unit.is_ok());
        let zero = OddFormIdeal::new(&r, vec![], GammaMode::Explicit(vec![r.family().q(1).clone()]));
        assert!(zero.is_err());
    }

    #[test]
    fn double_projections() {
        let r = build_example(FamilyKind::Symplectic, 1, 4).unwrap();
        let j = OddFormIdeal::principal(&r, 2, GammaMode::Max).unwrap();
        let d = build_double(&r, &j).unwrap();
        let data = d.double_data().unwrap();
        for u in r.delta_group_generators() {
            let du = data.join_pair(u, u);
            assert!(d.delta_membership(&du));
            let (a, b) = data.split_pair(&du);
            assert_eq!((&a, &b), (u, u));
        }
        let q = r.family().q(1);
        assert!(!d.delta_membership(&data.join_pair(q, &r.zero_pair())));
    }
}
