use std::sync::OnceLock;

use proptest::prelude::*;

use oddform::algebra::AlgElem;
use oddform::coeff::CoeffRing;
use oddform::families::{build_example, FamilyKind};
use oddform::oddform::{FormPair, OddFormRing};
use oddform::stability::{is_right_unimodular, reduce_to_smaller, ReductionCertificate, UnimodularColumn};
use oddform::unitary::{Packer, UnitaryElem};

fn sp3() -> &'static OddFormRing {
    static R: OnceLock<OddFormRing> = OnceLock::new();
    R.get_or_init(|| build_example(FamilyKind::Symplectic, 2, 3).unwrap())
}

fn eo2() -> &'static OddFormRing {
    static R: OnceLock<OddFormRing> = OnceLock::new();
    R.get_or_init(|| build_example(FamilyKind::EvenOrthogonal, 2, 2).unwrap())
}

fn lin4() -> &'static OddFormRing {
    static R: OnceLock<OddFormRing> = OnceLock::new();
    R.get_or_init(|| build_example(FamilyKind::Linear, 2, 4).unwrap())
}

fn elem(r: &OddFormRing, seed: &[u32]) -> AlgElem {
    let m = r.alg().ring().modulus();
    r.alg().elem((0..r.alg().dim()).map(|k| seed[k % seed.len()].wrapping_mul(k as u32 + 1) % m).collect()).unwrap()
}

fn word(r: &OddFormRing, picks: &[usize]) -> UnitaryElem {
    let gens: Vec<UnitaryElem> = r.elementary_generators(r.rank()).unwrap().into_iter().map(|(_, g)| g).collect();
    picks.iter().fold(r.identity(), |g, &k| r.compose(&g, &gens[k % gens.len()]))
}

fn pair(r: &OddFormRing, k: usize) -> FormPair {
    let gens = r.delta_group_generators();
    gens[k % gens.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coeff_laws(m in 2u32..200, a in 0u32..200, b in 0u32..200, c in 0u32..200) {
        let k = CoeffRing::new(m).unwrap();
        let (a, b, c) = (a % m, b % m, c % m);
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(a, k.neg(a)), 0);
        if let Some(inv) = k.inverse(a) {
            prop_assert_eq!(k.mul(a, inv), 1 % m);
        } else {
            prop_assert!(oddform::coeff::gcd(a as u64, m as u64) != 1);
        }
    }

    #[test]
    fn algebra_associative_and_involutive(x in prop::collection::vec(0u32..3, 1..6), y in prop::collection::vec(0u32..3, 1..6), z in prop::collection::vec(0u32..3, 1..6)) {
        let r = sp3();
        let a = r.alg();
        let (x, y, z) = (elem(r, &x), elem(r, &y), elem(r, &z));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.conj(&a.mul(&x, &y)), a.mul(&a.conj(&y), &a.conj(&x)));
        prop_assert_eq!(a.conj(&a.conj(&x)), x);
    }

    #[test]
    fn heisenberg_group_law(i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let r = sp3();
        let (u, v, w) = (pair(r, i), pair(r, j), pair(r, k));
        prop_assert_eq!(r.dotplus(&r.dotplus(&u, &v), &w), r.dotplus(&u, &r.dotplus(&v, &w)));
        prop_assert!(r.dotplus(&u, &r.dotminus(&u)).is_zero());
        prop_assert!(r.trace_condition(&r.dotplus(&u, &v)));
        prop_assert!(r.delta_membership(&r.dotplus(&u, &v)));
    }

    #[test]
    fn unitary_group_laws(p in prop::collection::vec(0usize..1000, 0..10), q in prop::collection::vec(0usize..1000, 0..10), s in prop::collection::vec(0usize..1000, 0..10)) {
        let r = sp3();
        let (g, h, k) = (word(r, &p), word(r, &q), word(r, &s));
        prop_assert!(r.is_unitary_beta(g.beta()));
        prop_assert!(r.compose(&g, &r.inverse(&g)).is_identity());
        prop_assert_eq!(r.compose(&r.compose(&g, &h), &k), r.compose(&g, &r.compose(&h, &k)));
        prop_assert_eq!(r.unitary_membership(g.beta()), Some(g));
    }

    #[test]
    fn packer_round_trip(x in prop::collection::vec(0u32..3, 1..6)) {
        let r = sp3();
        let p = Packer::for_ring(r);
        let x = elem(r, &x);
        prop_assert_eq!(p.decode(&p.encode(&x)), x);
    }

    #[test]
    fn unimodular_witness_is_exact(i in 0usize..1000, j in 0usize..1000) {
        let r = lin4();
        let a = r.alg();
        let c11 = r.corner_elements(1, 1).unwrap();
        let c21 = r.corner_elements(2, 1).unwrap();
        let (x, y) = (c11[i % c11.len()].clone(), c21[j % c21.len()].clone());
        let col = UnimodularColumn::new(1, vec![(1, x.clone()), (2, y.clone())]);
        if let Some(w) = is_right_unimodular(r, &col).unwrap() {
            let sum = a.add(&a.mul(&w[0], &x), &a.mul(&w[1], &y));
            prop_assert_eq!(&sum, r.family().e(1));
        }
    }

    #[test]
    fn certificates_verify_and_round_trip(p in prop::collection::vec(0usize..1000, 0..12)) {
        let r = eo2();
        let g = word(r, &p);
        let cert = reduce_to_smaller(r, &g, 2).unwrap();
        prop_assert!(cert.verify(r).unwrap());
        let back = ReductionCertificate::from_json(&cert.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, cert);
    }
}
