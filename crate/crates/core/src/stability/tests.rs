use rayon::prelude::*;

use super::*;
use crate::families::{build_example, FamilyKind};
use crate::unitary::{enumerate_unitary, TransvectionSpec, CLOSURE_BUDGET, ENUM_BUDGET};

fn ring(kind: FamilyKind, n: usize, m: u32) -> OddFormRing {
    build_example(kind, n, m).unwrap()
}

#[test]
fn unimodular_examples() {
    let r = ring(FamilyKind::Linear, 1, 4);
    let a = r.alg();
    let e1 = r.family().e(1).clone();
    let col = UnimodularColumn::new(1, vec![(1, e1.clone()), (1, a.zero())]);
    let y = is_right_unimodular(&r, &col).unwrap().unwrap();
    assert_eq!(a.mul(&y[0], &e1), e1);
    let zero = UnimodularColumn::new(1, vec![(1, a.zero()), (1, a.zero())]);
    assert!(is_right_unimodular(&r, &zero).unwrap().is_none());
    let mixed = UnimodularColumn::new(1, vec![(1, a.scale(2, &e1)), (1, e1.clone())]);
    assert!(is_right_unimodular(&r, &mixed).unwrap().is_some());
    let lone = UnimodularColumn::new(1, vec![(1, a.scale(2, &e1))]);
    assert!(is_right_unimodular(&r, &lone).unwrap().is_none());
}

#[test]
fn stable_rank_examples() {
    for m in [2, 3, 4] {
        let r = ring(FamilyKind::Linear, 1, m);
        assert_eq!(sr_at_most(&r, 2).unwrap().holds, Some(true), "sr over Z/{m}");
        assert_eq!(sr_at_most(&r, 3).unwrap().holds, Some(true));
        assert_eq!(sr_at_most(&r, 1).unwrap().holds, None);
    }
}

#[test]
fn lambda_examples() {
    for (kind, m) in [(FamilyKind::Symplectic, 2), (FamilyKind::EvenOrthogonal, 3), (FamilyKind::OddOrthogonal, 3)] {
        let r = ring(kind, 2, m);
        let c = lambda_sr_at_most(&r, 2).unwrap();
        assert_eq!(c.holds, Some(true), "{kind} over F{m}: {c:?}");
        assert!(c.unimodular > 0);
    }
}

#[test]
fn column_form_agrees() {
    for (kind, m) in [(FamilyKind::Symplectic, 2), (FamilyKind::EvenOrthogonal, 2), (FamilyKind::Linear, 3)] {
        let r = ring(kind, 2, m);
        let direct = lambda_sr_at_most(&r, 2).unwrap().holds;
        let col = equivalent_lsr_check(&r).unwrap().holds;
        assert_eq!(direct, col, "{kind} over F{m}");
    }
}

#[test]
fn even_orth_rank_one_lambda_fails() {
    let r = ring(FamilyKind::EvenOrthogonal, 1, 2);
    let c = lambda_sr_at_most(&r, 1).unwrap();
    assert_eq!(c.holds, Some(false));
    let zero = ring(FamilyKind::Linear, 1, 2);
    assert_eq!(sr_at_most(&zero, 2).unwrap().holds, Some(true));
}

#[test]
fn heisenberg_generator_cases() {
    let r = ring(FamilyKind::Symplectic, 2, 2);
    let a = r.alg();
    let f = heisenberg_factor(&r, &r.identity(), 2).unwrap();
    assert!(f.h_plus.is_empty() && f.h_minus.is_empty() && f.g_small.is_identity());
    let x = a.basis(a.index_of(1, 2).unwrap());
    let spec = TransvectionSpec::Short { i: 1, j: 2, x };
    let t = r.transvection(&spec).unwrap();
    let f = heisenberg_factor(&r, &t, 2).unwrap();
    assert_eq!(f.h_plus, vec![spec]);
    assert!(f.g_small.is_identity() && f.h_minus.is_empty());
    let w = r.transvection(&TransvectionSpec::Short { i: 1, j: -1, x: a.zero() });
    assert!(w.is_err());
    let small = r.elementary_generators(1).unwrap().pop().unwrap().1;
    let u = r.delta0(2).unwrap().iter().find(|u| !u.is_zero()).cloned().unwrap();
    let g = r.compose(&small, &r.transvection(&TransvectionSpec::Ultrashort { i: 2, u }).unwrap());
    let f = heisenberg_factor(&r, &g, 2).unwrap();
    let back = r.compose(
        &r.compose(&r.eval_word(&f.h_plus).unwrap(), &f.g_small),
        &r.inverse(&r.eval_word(&f.h_minus).unwrap()),
    );
    assert_eq!(back, g);
    assert_eq!(f.g_small, small);
}

#[test]
fn reduce_all_of_rank_two() {
    for kind in [FamilyKind::Symplectic, FamilyKind::EvenOrthogonal] {
        let r = ring(kind, 2, 2);
        let u = enumerate_unitary(&r, 2, ENUM_BUDGET).unwrap();
        let bad: Vec<String> = u
            .par_iter()
            .filter_map(|g| match reduce_to_smaller(&r, &g, 2) {
                Ok(c) if c.verify(&r).unwrap() => None,
                Ok(_) => Some("unverified".to_string()),
                Err(e) => Some(e.to_string()),
            })
            .collect();
        assert!(bad.is_empty(), "{kind}: {} failures, first {:?}", bad.len(), bad.first());
    }
}

#[test]
fn reduce_trivial_and_tampered() {
    let r = ring(FamilyKind::EvenOrthogonal, 2, 2);
    let small = r.elementary_generators(1).unwrap();
    let g = small.first().map(|(_, g)| g.clone()).unwrap_or_else(|| r.identity());
    let c = reduce_to_smaller(&r, &g, 2).unwrap();
    assert!(c.left_word.is_empty() && c.h_plus.is_empty() && c.h_minus.is_empty());
    let u = enumerate_unitary(&r, 2, ENUM_BUDGET).unwrap();
    let g = u.iter().filter(|g| r.restrict_to_smaller(g, 1).is_none()).last().unwrap();
    let mut c = reduce_to_smaller(&r, &g, 2).unwrap();
    let json = c.to_json().unwrap();
    assert_eq!(ReductionCertificate::from_json(&json).unwrap(), c);
    let other = u.iter().find(|h| *h != g).unwrap();
    c.input_beta = other.into_beta();
    assert!(!c.verify(&r).unwrap());
    assert!(reduce_to_smaller(&r, &g, 1).is_err());
}

#[test]
fn injective_rank_three() {
    let r = ring(FamilyKind::EvenOrthogonal, 3, 2);
    let rep = injective_stability_check(&r, 3, CLOSURE_BUDGET).unwrap();
    assert_eq!((rep.eu_order, rep.eu_smaller_order, rep.intersection_order), (20160, 36, 36));
    assert_eq!(rep.verdict, Some(true));
    let r2 = ring(FamilyKind::EvenOrthogonal, 2, 2);
    let rep = injective_stability_check(&r2, 2, CLOSURE_BUDGET).unwrap();
    assert_eq!(rep.hypothesis, None);
    assert_eq!(rep.verdict, None);
}

#[test]
fn decomposition_even_orth() {
    let r = ring(FamilyKind::EvenOrthogonal, 3, 2);
    let rep = decomposition_a_check(&r, 3, CLOSURE_BUDGET).unwrap();
    assert!(rep.factors, "{rep:?}");
}
