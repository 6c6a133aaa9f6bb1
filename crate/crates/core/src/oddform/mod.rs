//! Odd form parameters in the pair model u = (π(u), ρ(u)).

mod axioms;
mod family;
mod ideal;

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, AlgebraDescriptor, AlgebraJson, UnitizedElem};
use crate::coeff::{kernel_is_trivial, solve_linear_system, Matrix, Span};
use crate::error::{Error, Result};

pub use axioms::{check_family, check_oddform_axioms, Sampler};
pub use family::{FamilyJson, HyperbolicFamily};
pub use ideal::{build_double, gamma_bounds, DoubleData, GammaBounds, GammaMode, OddFormIdeal};

/// Candidate budget for enumerating a corner or a Δ⁰_i.
pub const CORNER_BUDGET: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormPair {
    pub p: AlgElem,
    pub r: AlgElem,
}

impl FormPair {
    pub fn zero(dim: usize) -> Self {
        let z = AlgElem::from_raw(vec![0; dim]);
        FormPair { p: z.clone(), r: z }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.r.is_zero()
    }
}

/// A generator x ↦ (x·π, x·ρ₁ + x²·ρ₂) of Δ⁰.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delta0Generator {
    pub index: i32,
    pub pi: AlgElem,
    pub rho_linear: AlgElem,
    pub rho_quadratic: AlgElem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub index: i32,
    pub pi_coeffs: Vec<u32>,
    #[serde(default)]
    pub rho_linear: Option<Vec<u32>>,
    #[serde(default)]
    pub rho_quadratic: Option<Vec<u32>>,
}

impl Delta0Generator {
    pub fn eval(&self, alg: &AlgebraDescriptor, x: u32) -> FormPair {
        let x2 = alg.ring().mul(x, x);
        FormPair {
            p: alg.scale(x, &self.pi),
            r: alg.add(&alg.scale(x, &self.rho_linear), &alg.scale(x2, &self.rho_quadratic)),
        }
    }
}

/// Δ = (∔ q_i·R) ∔ {generators} ∔ φ(R) relative to a presentation family.
#[derive(Debug)]
pub struct Presentation {
    family: HyperbolicFamily,
    generators: Vec<Delta0Generator>,
    /// generators with π ≠ 0, in order
    moving: Vec<usize>,
    pi_matrix: Option<Matrix>,
    /// span of b − conj(b) and ρ₁ of the generators with π = 0
    even: Span,
}

#[derive(Debug)]
pub enum DeltaModel {
    Presented(Presentation),
    Double(DoubleData),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FaultInjection {
    /// flips the sign of ρ(u·s)
    pub act_sign: bool,
    /// flips the sign of the cross term in ρ(u ∔ v)
    pub dotplus_sign: bool,
}

pub(crate) type CornerCache = Mutex<HashMap<(i32, i32), Arc<Vec<AlgElem>>>>;

#[derive(Debug, Default)]
struct RingCache {
    delta0: Mutex<HashMap<i32, Arc<Vec<FormPair>>>>,
    corners: CornerCache,
    group_gens: OnceLock<Vec<FormPair>>,
}

/// A special odd form ring with a chosen hyperbolic family.
#[derive(Clone, Debug)]
pub struct OddFormRing {
    alg: Arc<AlgebraDescriptor>,
    family: HyperbolicFamily,
    delta: Arc<DeltaModel>,
    /// admissible β-coordinates when R is realized inside a larger free module
    domain: Option<Span>,
    faults: FaultInjection,
    name: String,
    cache: Arc<RingCache>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    #[serde(flatten)]
    pub algebra: AlgebraJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyJson>,
    #[serde(default)]
    pub delta0: Vec<GeneratorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl OddFormRing {
    pub fn presented(
        alg: AlgebraDescriptor,
        family: HyperbolicFamily,
        generators: Vec<Delta0Generator>,
        name: impl Into<String>,
    ) -> Result<Self> {
        let alg = Arc::new(alg);
        let pres = Presentation::new(&alg, family.clone(), generators)?;
        let ring = OddFormRing {
            alg,
            family,
            delta: Arc::new(DeltaModel::Presented(pres)),
            domain: None,
            faults: FaultInjection::default(),
            name: name.into(),
            cache: Arc::default(),
        };
        for i in ring.family.indices() {
            if !ring.delta_membership(ring.family.q(i)) {
                return Err(Error::input(format!("q_{i} = (e_{i}, 0) is not in Δ")));
            }
        }
        Ok(ring)
    }

    pub(crate) fn from_parts(
        alg: Arc<AlgebraDescriptor>,
        family: HyperbolicFamily,
        delta: DeltaModel,
        domain: Option<Span>,
        name: String,
    ) -> Self {
        OddFormRing {
            alg,
            family,
            delta: Arc::new(delta),
            domain,
            faults: FaultInjection::default(),
            name,
            cache: Arc::default(),
        }
    }

    pub fn from_json(j: &RingJson) -> Result<Self> {
        let alg = AlgebraDescriptor::from_json(&j.algebra)?;
        let fj = j
            .family
            .as_ref()
            .ok_or_else(|| Error::input("descriptor has no hyperbolic family"))?;
        let family = HyperbolicFamily::from_json(&alg, fj)?;
        let mut gens = Vec::new();
        for g in &j.delta0 {
            let vec = |v: &Option<Vec<u32>>| match v {
                Some(v) => alg.elem(v.clone()).map_err(|_| Error::input("generator vector length")),
                None => Ok(alg.zero()),
            };
            gens.push(Delta0Generator {
                index: g.index,
                pi: alg.elem(g.pi_coeffs.clone()).map_err(|_| Error::input("pi_coeffs length"))?,
                rho_linear: vec(&g.rho_linear)?,
                rho_quadratic: vec(&g.rho_quadratic)?,
            });
        }
        let name = j.name.clone().unwrap_or_else(|| "descriptor".into());
        OddFormRing::presented(alg, family, gens, name)
    }

    pub fn to_json(&self) -> Result<RingJson> {
        let DeltaModel::Presented(p) = &*self.delta else {
            return Err(Error::precondition("only presented rings have a descriptor form"));
        };
        let delta0 = p
            .generators
            .iter()
            .map(|g| GeneratorJson {
                index: g.index,
                pi_coeffs: g.pi.coords().to_vec(),
                rho_linear: Some(g.rho_linear.coords().to_vec()),
                rho_quadratic: Some(g.rho_quadratic.coords().to_vec()),
            })
            .collect();
        Ok(RingJson {
            algebra: self.alg.to_json(),
            family: Some(p.family.to_json(&self.alg)),
            delta0,
            name: Some(self.name.clone()),
        })
    }

    pub fn with_faults(&self, faults: FaultInjection) -> Self {
        let mut r = self.clone();
        r.faults = faults;
        r.cache = Arc::default();
        r
    }

    pub fn with_family(&self, family: HyperbolicFamily, name: impl Into<String>) -> Self {
        let mut r = self.clone();
        r.family = family;
        r.name = name.into();
        r.cache = Arc::default();
        r
    }

    pub fn alg(&self) -> &AlgebraDescriptor {
        &self.alg
    }

    pub fn alg_arc(&self) -> Arc<AlgebraDescriptor> {
        self.alg.clone()
    }

    pub fn family(&self) -> &HyperbolicFamily {
        &self.family
    }

    pub fn rank(&self) -> usize {
        self.family.rank()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn delta_model(&self) -> &DeltaModel {
        &self.delta
    }

    pub fn double_data(&self) -> Option<&DoubleData> {
        match &*self.delta {
            DeltaModel::Double(d) => Some(d),
            DeltaModel::Presented(_) => None,
        }
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match &*self.delta {
            DeltaModel::Presented(p) => Some(p),
            DeltaModel::Double(_) => None,
        }
    }

    pub fn domain(&self) -> Option<&Span> {
        self.domain.as_ref()
    }

    pub fn in_domain(&self, x: &AlgElem) -> bool {
        self.domain.as_ref().is_none_or(|s| s.contains(x.coords()))
    }

    // ---- pair calculus ----

    pub fn zero_pair(&self) -> FormPair {
        FormPair::zero(self.alg.dim())
    }

    pub fn phi(&self, x: &AlgElem) -> FormPair {
        let a = &self.alg;
        FormPair { p: a.zero(), r: a.sub(x, &a.conj(x)) }
    }

    pub fn dotplus(&self, u: &FormPair, v: &FormPair) -> FormPair {
        let a = &self.alg;
        let cross = a.mul(&a.conj(&u.p), &v.p);
        let r = if self.faults.dotplus_sign {
            a.add(&a.add(&u.r, &cross), &v.r)
        } else {
            a.add(&a.sub(&u.r, &cross), &v.r)
        };
        FormPair { p: a.add(&u.p, &v.p), r }
    }

    pub fn dotminus(&self, u: &FormPair) -> FormPair {
        let a = &self.alg;
        FormPair {
            p: a.neg(&u.p),
            r: a.sub(&a.neg(&u.r), &a.mul(&a.conj(&u.p), &u.p)),
        }
    }

    /// u ∸ v = u ∔ (∸v).
    pub fn dotsub(&self, u: &FormPair, v: &FormPair) -> FormPair {
        self.dotplus(u, &self.dotminus(v))
    }

    pub fn dotsum<'a>(&self, items: impl IntoIterator<Item = &'a FormPair>) -> FormPair {
        items.into_iter().fold(self.zero_pair(), |acc, u| self.dotplus(&acc, u))
    }

    pub fn act(&self, u: &FormPair, s: &UnitizedElem) -> FormPair {
        let a = &self.alg;
        let p = a.rmul(&u.p, s);
        let mut r = a.lmul(&a.uconj(s), &a.rmul(&u.r, s));
        if self.faults.act_sign {
            r = a.neg(&r);
        }
        FormPair { p, r }
    }

    pub fn act_r(&self, u: &FormPair, x: &AlgElem) -> FormPair {
        self.act(u, &self.alg.lift(x))
    }

    /// conj(r) + r + conj(p)·p = 0.
    pub fn trace_condition(&self, u: &FormPair) -> bool {
        let a = &self.alg;
        a.add(&a.add(&a.conj(&u.r), &u.r), &a.mul(&a.conj(&u.p), &u.p)).is_zero()
    }

    // ---- Δ ----

    pub fn delta_membership(&self, u: &FormPair) -> bool {
        if u.p.dim() != self.alg.dim() || u.r.dim() != self.alg.dim() {
            return false;
        }
        if !self.trace_condition(u) {
            return false;
        }
        match &*self.delta {
            DeltaModel::Presented(p) => p.contains(self, u),
            DeltaModel::Double(d) => d.contains(self, u),
        }
    }

    /// u^i for i ≠ 0, or u⁰ with u = u^{−n} ∔ … ∔ u^n.
    pub fn delta_component(&self, u: &FormPair, i: i32) -> Result<FormPair> {
        if !self.delta_membership(u) {
            return Err(Error::precondition("component of an element outside Δ"));
        }
        Ok(component_in(self, &self.family, u, i))
    }

    /// u = (0, w) ∈ Δ for w ∈ R_{0′}.
    pub fn even_part_membership(&self, w: &AlgElem) -> Result<bool> {
        self.alg.check_same(w)?;
        let a = &self.alg;
        let s = self.family.indices().fold(a.zero(), |acc, i| a.add(&acc, self.family.e(i)));
        let s = a.lift(&s);
        if a.sandwich(&s, w, &s) != *w {
            return Err(Error::precondition("element lies outside R_{0'}"));
        }
        Ok(self.delta_membership(&FormPair { p: a.zero(), r: w.clone() }))
    }

    /// Elements generating Δ as a group: q_i·b, Δ⁰ generators, φ(b).
    pub fn delta_group_generators(&self) -> &[FormPair] {
        self.cache.group_gens.get_or_init(|| {
            let a = &self.alg;
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            let mut push = |u: FormPair| {
                if !u.is_zero() && seen.insert(u.clone()) {
                    out.push(u);
                }
            };
            let basis = a.basis_elems();
            for i in self.family.indices() {
                for b in &basis {
                    push(self.act_r(self.family.q(i), b));
                }
            }
            match &*self.delta {
                DeltaModel::Presented(p) => {
                    for g in &p.generators {
                        for x in a.ring().elements().skip(1) {
                            push(g.eval(a, x));
                        }
                    }
                }
                DeltaModel::Double(_) => {
                    for i in self.family.indices() {
                        for u in self.delta0(i).map(|v| v.to_vec()).unwrap_or_default() {
                            push(u);
                        }
                    }
                    if let Ok(z) = self.delta0_zero() {
                        for u in z {
                            push(u);
                        }
                    }
                }
            }
            for b in &basis {
                push(self.phi(b));
            }
            out
        })
    }

    /// All elements of e_i·R·e_j (index 0 meaning e₀) inside the β-domain.
    pub fn corner_elements(&self, i: i32, j: i32) -> Result<Arc<Vec<AlgElem>>> {
        if let Some(v) = self.cache.corners.lock().unwrap().get(&(i, j)) {
            return Ok(v.clone());
        }
        let a = &self.alg;
        let span = a.corner_basis(&self.family.idem(a, i), &self.family.idem(a, j))?;
        let all = span.elements(CORNER_BUDGET)?;
        let v: Vec<AlgElem> = all
            .into_iter()
            .map(AlgElem::from_raw)
            .filter(|x| self.in_domain(x))
            .collect();
        let v = Arc::new(v);
        self.cache.corners.lock().unwrap().insert((i, j), v.clone());
        Ok(v)
    }

    pub fn corner_span(&self, i: i32, j: i32) -> Result<Span> {
        let a = &self.alg;
        a.corner_basis(&self.family.idem(a, i), &self.family.idem(a, j))
    }

    pub fn in_corner(&self, x: &AlgElem, i: i32, j: i32) -> bool {
        let a = &self.alg;
        a.sandwich(&self.family.idem(a, i), x, &self.family.idem(a, j)) == *x && self.in_domain(x)
    }

    /// Δ⁰_i = {u ∈ Δ : π(u) ∈ e₀R, u·e_i = u}, enumerated and cached.
    pub fn delta0(&self, i: i32) -> Result<Arc<Vec<FormPair>>> {
        if let Some(v) = self.cache.delta0.lock().unwrap().get(&i) {
            return Ok(v.clone());
        }
        let a = &self.alg;
        let ps = self.raw_corner(0, i)?;
        let rs = self.raw_corner(-i, i)?;
        let ei = a.lift(self.family.e(i));
        let mut out = Vec::new();
        for p in &ps {
            for r in &rs {
                let u = FormPair { p: p.clone(), r: r.clone() };
                if self.delta_membership(&u) && self.act(&u, &ei) == u {
                    out.push(u);
                }
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.cache.delta0.lock().unwrap().insert(i, out.clone());
        Ok(out)
    }

    /// Elements u ∈ Δ with π(u) ∈ R₀ and ρ(u) ∈ R₀ (the parameter of U(R₀, Δ⁰₀)).
    pub fn delta0_zero(&self) -> Result<Vec<FormPair>> {
        let zs = self.raw_corner(0, 0)?;
        let mut out = Vec::new();
        for p in &zs {
            for r in &zs {
                let u = FormPair { p: p.clone(), r: r.clone() };
                if self.delta_membership(&u) {
                    out.push(u);
                }
            }
        }
        Ok(out)
    }

    fn raw_corner(&self, i: i32, j: i32) -> Result<Vec<AlgElem>> {
        let a = &self.alg;
        let span = a.corner_basis(&self.family.idem(a, i), &self.family.idem(a, j))?;
        Ok(span.elements(CORNER_BUDGET)?.into_iter().map(AlgElem::from_raw).collect())
    }

    pub fn describe_pair(&self, u: &FormPair) -> String {
        format!("(π = {}, ρ = {})", self.alg.label_of(&u.p), self.alg.label_of(&u.r))
    }
}

/// Components relative to an arbitrary family.
fn component_in(ring: &OddFormRing, fam: &HyperbolicFamily, u: &FormPair, i: i32) -> FormPair {
    let a = ring.alg();
    let piece = |j: i32| ring.act_r(fam.q(j), &a.mul(fam.e(j), &u.p));
    if i != 0 {
        return piece(i);
    }
    let n = fam.rank() as i32;
    let neg: Vec<FormPair> = (-n..=-1).map(piece).collect();
    let pos: Vec<FormPair> = (1..=n).map(piece).collect();
    let left = ring.dotsum(&neg);
    let right = ring.dotsum(&pos);
    ring.dotsub(&ring.dotplus(&ring.dotminus(&left), u), &right)
}

impl Presentation {
    fn new(
        alg: &AlgebraDescriptor,
        family: HyperbolicFamily,
        generators: Vec<Delta0Generator>,
    ) -> Result<Self> {
        let d = alg.dim();
        let e0 = family.e_zero(alg);
        let mut moving = Vec::new();
        let mut still = Vec::new();
        for (t, g) in generators.iter().enumerate() {
            for v in [&g.pi, &g.rho_linear, &g.rho_quadratic] {
                alg.check_same(v).map_err(|_| Error::input("generator vector length"))?;
            }
            if alg.lmul(&e0, &g.pi) != g.pi {
                return Err(Error::input(format!("generator {t} has π outside e₀R")));
            }
            if g.pi.is_zero() {
                if !g.rho_quadratic.is_zero() {
                    return Err(Error::input(format!(
                        "generator {t} has π = 0 but a quadratic ρ-term"
                    )));
                }
                still.push(t);
            } else {
                moving.push(t);
            }
        }
        let pi_matrix = if moving.is_empty() {
            None
        } else {
            let cols: Vec<Vec<u32>> = moving.iter().map(|&t| generators[t].pi.coords().to_vec()).collect();
            let m = Matrix::from_columns(d, &cols)?;
            if !kernel_is_trivial(&alg.ring(), &m) {
                return Err(Error::input("generator π-parts are not independent"));
            }
            Some(m)
        };
        let anti = (0..d).map(|b| {
            let x = alg.basis(b);
            alg.sub(&x, &alg.conj(&x)).into_coords()
        });
        let lin = still.iter().map(|&t| generators[t].rho_linear.coords().to_vec());
        let even = Span::new(alg.ring(), d, anti.chain(lin).collect::<Vec<_>>());
        let pres = Presentation { family, generators, moving, pi_matrix, even };
        // generators must be pairs whatever the coefficient
        for (t, g) in pres.generators.iter().enumerate() {
            for x in alg.ring().elements() {
                let u = g.eval(alg, x);
                let tr = alg.add(
                    &alg.add(&alg.conj(&u.r), &u.r),
                    &alg.mul(&alg.conj(&u.p), &u.p),
                );
                if !tr.is_zero() {
                    return Err(Error::input(format!(
                        "generator {t} violates the trace condition at coefficient {x}"
                    )));
                }
            }
        }
        Ok(pres)
    }

    pub fn family(&self) -> &HyperbolicFamily {
        &self.family
    }

    pub fn generators(&self) -> &[Delta0Generator] {
        &self.generators
    }

    fn contains(&self, ring: &OddFormRing, u: &FormPair) -> bool {
        let a = ring.alg();
        let u0 = component_in(ring, &self.family, u, 0);
        let mut w = u0;
        if let Some(m) = &self.pi_matrix {
            let Ok(Some(c)) = solve_linear_system(&a.ring(), m, w.p.coords()) else {
                return false;
            };
            for (&t, &x) in self.moving.iter().zip(&c) {
                if x != 0 {
                    w = ring.dotsub(&w, &self.generators[t].eval(a, x));
                }
            }
        }
        w.p.is_zero() && self.even.contains(w.r.coords())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_example, FamilyKind};

    fn ring(kind: FamilyKind, n: usize, m: u32) -> OddFormRing {
        build_example(kind, n, m).unwrap()
    }

    fn idx(r: &OddFormRing, i: i32, j: i32) -> AlgElem {
        r.alg().basis(r.alg().index_of(i, j).unwrap())
    }

    #[test]
    fn spec_dotplus_examples() {
        let r = ring(FamilyKind::Symplectic, 1, 2);
        let q1 = r.family().q(1).clone();
        assert!(r.dotplus(&q1, &q1).is_zero());
        assert_eq!(r.dotplus(&q1, &r.zero_pair()), q1);
        let r3 = ring(FamilyKind::Symplectic, 2, 3);
        let x = r3.alg().add(&idx(&r3, 1, 2), &r3.alg().scale(2, &idx(&r3, -1, 2)));
        assert_eq!(r3.dotminus(&r3.phi(&x)), r3.phi(&r3.alg().conj(&x)));
    }

    #[test]
    fn spec_phi_examples() {
        let r = ring(FamilyKind::Symplectic, 1, 3);
        let a = r.alg();
        let x = idx(&r, -1, 1);
        assert_eq!(r.phi(&x), FormPair { p: a.zero(), r: a.scale(2, &x) });
        let h = a.add(&idx(&r, 1, 1), &idx(&r, -1, -1));
        assert!(r.phi(&h).is_zero());
        // φ(x e_{−i,i}) = 2x·u_i
        let r = ring(FamilyKind::Symplectic, 2, 3);
        let a = r.alg();
        for i in [-2, -1, 1, 2] {
            let u = FormPair { p: a.zero(), r: idx(&r, -i, i) };
            for x in 0..3 {
                let phi = r.phi(&a.scale(x, &idx(&r, -i, i)));
                let two_x_u = FormPair { p: a.zero(), r: a.scale(2 * x, &u.r) };
                assert_eq!(phi, two_x_u);
            }
        }
    }

    #[test]
    fn spec_act_examples() {
        let r = ring(FamilyKind::Symplectic, 2, 3);
        let a = r.alg();
        let q1 = r.family().q(1).clone();
        assert_eq!(r.act_r(&q1, r.family().e(1)), q1);
        assert!(r.act_r(&q1, &a.zero()).is_zero());
        let eps = |i: i32| if i > 0 { 1i64 } else { -1 };
        for j in [-2, -1, 2] {
            if j == -1 {
                continue;
            }
            for x in 0..3u32 {
                for y in 0..3u32 {
                    let u = FormPair { p: a.zero(), r: a.scale(x, &idx(&r, -1, 1)) };
                    let got = r.act_r(&u, &a.scale(y, &idx(&r, 1, j)));
                    let c = a.ring().reduce(eps(1) * eps(j) * (x * y * y) as i64);
                    let want = FormPair { p: a.zero(), r: a.scale(c, &idx(&r, -j, j)) };
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn spec_membership_examples() {
        let r = ring(FamilyKind::EvenOrthogonal, 1, 2);
        let a = r.alg();
        assert!(r.delta_membership(&FormPair { p: idx(&r, 1, 1), r: a.zero() }));
        assert!(!r.delta_membership(&FormPair { p: a.zero(), r: idx(&r, 1, 1) }));
        let s = ring(FamilyKind::Symplectic, 1, 2);
        assert!(s.delta_membership(&FormPair { p: s.alg().zero(), r: idx(&s, -1, 1) }));
    }

    #[test]
    fn spec_component_examples() {
        let r = ring(FamilyKind::OddOrthogonal, 2, 3);
        let a = r.alg();
        for i in r.family().indices() {
            assert_eq!(r.delta_component(r.family().q(i), i).unwrap(), *r.family().q(i));
        }
        let x = a.add(&idx(&r, 1, 2), &a.add(&idx(&r, 0, -1), &idx(&r, -2, 0)));
        let phi = r.phi(&x);
        assert_eq!(r.delta_component(&phi, 0).unwrap(), phi);
        for i in r.family().indices() {
            assert!(r.delta_component(&phi, i).unwrap().is_zero());
        }
        let bad = FormPair { p: a.zero(), r: idx(&r, 1, 1) };
        assert!(r.delta_component(&bad, 0).is_err());
    }

    #[test]
    fn spec_even_part_examples() {
        let s = ring(FamilyKind::Symplectic, 2, 2);
        let x = idx(&s, 1, 2);
        let w = s.alg().sub(&x, &s.alg().conj(&x));
        assert!(s.even_part_membership(&w).unwrap());
        assert!(s.even_part_membership(&idx(&s, -1, 1)).unwrap());
        let o = ring(FamilyKind::EvenOrthogonal, 2, 2);
        assert!(!o.even_part_membership(&idx(&o, -1, 1)).unwrap());
        let odd = ring(FamilyKind::OddOrthogonal, 1, 3);
        assert!(odd.even_part_membership(&idx(&odd, 0, 1)).is_err());
    }

    #[test]
    fn delta0_shapes() {
        let s = ring(FamilyKind::Symplectic, 1, 2);
        let d = s.delta0(1).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.contains(&FormPair { p: s.alg().zero(), r: idx(&s, -1, 1) }));
        let o = ring(FamilyKind::EvenOrthogonal, 2, 2);
        for i in o.family().indices() {
            assert_eq!(o.delta0(i).unwrap().len(), 1);
        }
        let odd = ring(FamilyKind::OddOrthogonal, 1, 3);
        assert_eq!(odd.delta0(1).unwrap().len(), 3);
    }

    #[test]
    fn descriptor_json_round_trip() {
        let r = ring(FamilyKind::OddOrthogonal, 1, 4);
        let j = r.to_json().unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back = OddFormRing::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.to_json().unwrap(), j);
        assert!(back.delta_membership(&FormPair { p: idx(&r, 0, 1), r: r.alg().scale(3, &idx(&r, -1, 1)) }));
    }

    #[test]
    fn rejects_dependent_generators() {
        let r = ring(FamilyKind::OddOrthogonal, 1, 3);
        let mut j = r.to_json().unwrap();
        let dup = j.delta0[0].clone();
        j.delta0.push(dup);
        assert!(OddFormRing::from_json(&j).is_err());
    }
}
