use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgElem;
use crate::report::AxiomReport;

use super::{FormPair, OddFormRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampler {
    Exhaustive,
    Random { samples: usize, seed: u64 },
    /// exhaustive when the tuple space is at most `limit`, else random
    Auto { limit: u64, samples: usize, seed: u64 },
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::Auto { limit: 10_000_000, samples: 10_000, seed: 0 }
    }
}

pub fn check_oddform_axioms(ring: &OddFormRing, sampler: Sampler) -> AxiomReport {
    let gens = ring.delta_group_generators().to_vec();
    let d = ring.alg().dim() as u64;
    let g = gens.len() as u64;
    let space = g * g + g * d * d + d * d;
    let exhaustive = match sampler {
        Sampler::Exhaustive => true,
        Sampler::Random { .. } => false,
        Sampler::Auto { limit, .. } => space <= limit,
    };
    if exhaustive {
        let mut rep = AxiomReport::new(
            "odd form ring",
            format!("exhaustive: {g} Δ-generators, {d} basis elements, tuple space {space}"),
        );
        let basis = ring.alg().basis_elems();
        for u in &gens {
            check_unary(ring, &mut rep, u);
            for v in &gens {
                check_pair(ring, &mut rep, u, v);
            }
            for x in &basis {
                check_action(ring, &mut rep, u, x);
                for y in &basis {
                    check_distribution(ring, &mut rep, u, x, y);
                }
            }
        }
        for x in &basis {
            check_phi(ring, &mut rep, x);
            for y in &basis {
                check_phi_pair(ring, &mut rep, x, y);
            }
        }
        rep
    } else {
        let (samples, seed) = match sampler {
            Sampler::Random { samples, seed } | Sampler::Auto { samples, seed, .. } => (samples, seed),
            Sampler::Exhaustive => unreachable!(),
        };
        let mut rep = AxiomReport::new(
            "odd form ring",
            format!("random: {samples} tuples, seed {seed}, tuple space {space}"),
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let u = random_delta(ring, &gens, &mut rng);
            let v = random_delta(ring, &gens, &mut rng);
            let x = random_elem(ring, &mut rng);
            let y = random_elem(ring, &mut rng);
            check_unary(ring, &mut rep, &u);
            check_pair(ring, &mut rep, &u, &v);
            check_action(ring, &mut rep, &u, &x);
            check_distribution(ring, &mut rep, &u, &x, &y);
            check_phi(ring, &mut rep, &x);
            check_phi_pair(ring, &mut rep, &x, &y);
        }
        rep
    }
}

pub(crate) fn random_elem(ring: &OddFormRing, rng: &mut impl Rng) -> AlgElem {
    let a = ring.alg();
    let m = a.ring().modulus();
    let x = a.elem((0..a.dim()).map(|_| rng.gen_range(0..m)).collect()).unwrap();
    match ring.domain() {
        None => x,
        // fiber products: project onto the domain via a random combination
        Some(span) => {
            let c: Vec<u32> = (0..span.generators().len()).map(|_| rng.gen_range(0..m)).collect();
            AlgElem::from_raw(span.combine(&c))
        }
    }
}

pub(crate) fn random_delta(ring: &OddFormRing, gens: &[FormPair], rng: &mut impl Rng) -> FormPair {
    let mut u = ring.zero_pair();
    for _ in 0..6 {
        let g = &gens[rng.gen_range(0..gens.len())];
        let x = random_elem(ring, rng);
        u = ring.dotplus(&u, &ring.act_r(g, &x));
        if rng.gen_bool(0.5) {
            u = ring.dotplus(&u, g);
        }
    }
    u
}

fn show(ring: &OddFormRing, items: &[&FormPair]) -> String {
    items.iter().map(|u| ring.describe_pair(u)).collect::<Vec<_>>().join(", ")
}

fn check_unary(ring: &OddFormRing, rep: &mut AxiomReport, u: &FormPair) {
    let a = ring.alg();
    rep.check(ring.trace_condition(u), "trace condition", || show(ring, &[u]));
    let mu = ring.dotminus(u);
    rep.check(a.conj(&u.r) == mu.r, "conj(ρ(u)) = ρ(∸u)", || show(ring, &[u]));
    rep.check(ring.delta_membership(&mu), "Δ closed under ∸", || show(ring, &[u]));
    rep.check(ring.dotplus(u, &mu).is_zero(), "u ∔ ∸u = 0", || show(ring, &[u]));
}

fn check_pair(ring: &OddFormRing, rep: &mut AxiomReport, u: &FormPair, v: &FormPair) {
    let a = ring.alg();
    let s = ring.dotplus(u, v);
    rep.check(s.p == a.add(&u.p, &v.p), "π is a homomorphism", || show(ring, &[u, v]));
    let rho = a.add(&a.sub(&u.r, &a.mul(&a.conj(&u.p), &v.p)), &v.r);
    rep.check(s.r == rho, "ρ(u ∔ v) = ρ(u) − conj(π(u))π(v) + ρ(v)", || show(ring, &[u, v]));
    let defect = ring.phi(&a.neg(&a.mul(&a.conj(&u.p), &v.p)));
    let rhs = ring.dotplus(&ring.dotplus(v, u), &defect);
    rep.check(s == rhs, "u ∔ v = v ∔ u ∔ φ(−conj(π(u))π(v))", || show(ring, &[u, v]));
    rep.check(ring.delta_membership(&s), "Δ closed under ∔", || show(ring, &[u, v]));
}

fn check_action(ring: &OddFormRing, rep: &mut AxiomReport, u: &FormPair, x: &AlgElem) {
    let a = ring.alg();
    let ux = ring.act_r(u, x);
    rep.check(ux.p == a.mul(&u.p, x), "π(u·x) = π(u)x", || {
        format!("{}; x = {}", show(ring, &[u]), a.label_of(x))
    });
    let rho = a.mul(&a.mul(&a.conj(x), &u.r), x);
    rep.check(ux.r == rho, "ρ(u·x) = conj(x)ρ(u)x", || {
        format!("{}; x = {}", show(ring, &[u]), a.label_of(x))
    });
    let phi = ring.phi(x);
    rep.check(ring.dotplus(u, &phi) == ring.dotplus(&phi, u), "φ(R) is central", || {
        format!("{}; x = {}", show(ring, &[u]), a.label_of(x))
    });
    rep.check(ring.delta_membership(&ux), "Δ closed under the action", || {
        format!("{}; x = {}", show(ring, &[u]), a.label_of(x))
    });
}

fn check_distribution(ring: &OddFormRing, rep: &mut AxiomReport, u: &FormPair, x: &AlgElem, y: &AlgElem) {
    let a = ring.alg();
    let lhs = ring.act_r(u, &a.add(x, y));
    let mid = ring.phi(&a.mul(&a.mul(&a.conj(y), &u.r), x));
    let rhs = ring.dotplus(&ring.dotplus(&ring.act_r(u, x), &mid), &ring.act_r(u, y));
    rep.check(lhs == rhs, "u·(x + y) = u·x ∔ φ(conj(y)ρ(u)x) ∔ u·y", || {
        format!("{}; x = {}; y = {}", show(ring, &[u]), a.label_of(x), a.label_of(y))
    });
}

fn check_phi(ring: &OddFormRing, rep: &mut AxiomReport, x: &AlgElem) {
    let a = ring.alg();
    let phi = ring.phi(x);
    rep.check(phi.p.is_zero(), "π(φ(x)) = 0", || a.label_of(x));
    rep.check(phi.r == a.sub(x, &a.conj(x)), "ρ(φ(x)) = x − conj(x)", || a.label_of(x));
    let h = a.add(x, &a.conj(x));
    rep.check(ring.phi(&h).is_zero(), "φ vanishes on hermitian elements", || a.label_of(&h));
    rep.check(ring.delta_membership(&phi), "φ(R) ⊆ Δ", || a.label_of(x));
}

fn check_phi_pair(ring: &OddFormRing, rep: &mut AxiomReport, x: &AlgElem, y: &AlgElem) {
    let a = ring.alg();
    let lhs = ring.phi(&a.add(x, y));
    rep.check(lhs == ring.dotplus(&ring.phi(x), &ring.phi(y)), "φ is a homomorphism", || {
        format!("x = {}; y = {}", a.label_of(x), a.label_of(y))
    });
    let twisted = ring.phi(&a.mul(&a.mul(&a.conj(x), y), x));
    rep.check(twisted == ring.act_r(&ring.phi(y), x), "φ(conj(x)yx) = φ(y)·x", || {
        format!("x = {}; y = {}", a.label_of(x), a.label_of(y))
    });
}

/// Idempotent, hyperbolic-pair, Morita and freeness conditions of the working family.
pub fn check_family(ring: &OddFormRing) -> AxiomReport {
    let a = ring.alg();
    let fam = ring.family();
    let mut rep = AxiomReport::new("hyperbolic family", format!("rank {}", fam.rank()));
    let idx: Vec<i32> = fam.indices().collect();
    for &i in &idx {
        let ei = fam.e(i);
        rep.check(a.mul(ei, ei) == *ei, "e_i idempotent", || format!("i = {i}"));
        rep.check(a.conj(ei) == *fam.e(-i), "conj(e_i) = e_{-i}", || format!("i = {i}"));
        for &j in &idx {
            if i != j {
                rep.check(a.mul(ei, fam.e(j)).is_zero(), "e_i orthogonal", || format!("({i}, {j})"));
            }
        }
        let q = fam.q(i);
        rep.check(q.p == *ei && q.r.is_zero(), "π(q_i) = e_i, ρ(q_i) = 0", || format!("i = {i}"));
        rep.check(ring.act_r(q, ei) == *q, "q_i·e_i = q_i", || format!("i = {i}"));
        rep.check(ring.delta_membership(q), "q_i ∈ Δ", || format!("i = {i}"));
    }
    match fam.morita_equivalent(a) {
        Ok(ok) => rep.check(ok, "pairs Morita equivalent", || "e_|1| R e_|i| R e_|1| ≠ e_|1| R e_|1|".into()),
        Err(e) => rep.fail("pairs Morita equivalent", e.to_string()),
    }
    if fam.is_free() {
        let n = fam.rank() as i32;
        for i in 1..=n {
            let eii = fam.unit(a, i, i).unwrap();
            rep.check(eii == *fam.e(i), "e_ii = e_i", || format!("i = {i}"));
            for j in 1..=n {
                let eij = fam.unit(a, i, j).unwrap();
                rep.check(ring.in_corner(&eij, i, j), "e_ij ∈ e_i R e_j", || format!("({i}, {j})"));
                for k in 1..=n {
                    let ejk = fam.unit(a, j, k).unwrap();
                    let eik = fam.unit(a, i, k).unwrap();
                    rep.check(a.mul(&eij, &ejk) == eik, "e_ij e_jk = e_ik", || format!("({i}, {j}, {k})"));
                }
                // transported pair has the ρ-part of q_j
                let t = ring.act_r(fam.q(i), &eij);
                rep.check(t.p == eij && t.r == fam.q(j).r, "q_i·e_ij transports q_j", || format!("({i}, {j})"));
                let c = a.conj(&eij);
                let t = ring.act_r(fam.q(-j), &c);
                rep.check(t.p == c && t.r == fam.q(-i).r, "q_{-j}·conj(e_ij) transports q_{-i}", || {
                    format!("({i}, {j})")
                });
            }
        }
    }
    rep
}
