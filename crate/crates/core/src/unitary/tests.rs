use super::*;
use crate::families::{build_example, FamilyKind};
use crate::oddform::FaultInjection;

fn ring(kind: FamilyKind, n: usize, m: u32) -> OddFormRing {
    build_example(kind, n, m).unwrap()
}

#[test]
fn enumeration_orders() {
    let cases = [
        (FamilyKind::Linear, 2, 6),
        (FamilyKind::Symplectic, 2, 720),
        (FamilyKind::EvenOrthogonal, 2, 72),
        (FamilyKind::EvenOrthogonal, 1, 2),
    ];
    for (kind, n, order) in cases {
        let r = ring(kind, n, 2);
        assert_eq!(enumerate_unitary(&r, n, ENUM_BUDGET).unwrap().len(), order, "{kind} n={n}");
    }
}

#[test]
fn elementary_orders() {
    let r = ring(FamilyKind::EvenOrthogonal, 2, 2);
    assert_eq!(elementary_subgroup(&r, 2, CLOSURE_BUDGET).unwrap().len(), 36);
    assert_eq!(elementary_subgroup(&r, 1, CLOSURE_BUDGET).unwrap().len(), 1);
    let r = ring(FamilyKind::Linear, 2, 2);
    assert_eq!(elementary_subgroup(&r, 2, CLOSURE_BUDGET).unwrap().len(), 6);
}

#[test]
fn group_laws() {
    let r = ring(FamilyKind::Symplectic, 2, 3);
    let gens: Vec<UnitaryElem> = r.elementary_generators(2).unwrap().into_iter().map(|(_, g)| g).collect();
    for g in &gens {
        assert!(r.compose(g, &r.inverse(g)).is_identity());
        assert!(r.checked_compose(g, &gens[0]).is_ok());
        let (g0, _) = r.gamma_components(g).unwrap();
        assert!(r.delta_membership(&g0));
    }
    let g = r.product(&gens);
    assert!(r.is_unitary_beta(g.beta()));
}

#[test]
fn transvection_preconditions() {
    let r = ring(FamilyKind::Symplectic, 2, 2);
    let a = r.alg();
    let e12 = a.basis(a.index_of(1, 2).unwrap());
    assert!(r.transvection(&TransvectionSpec::Short { i: 1, j: 2, x: e12.clone() }).is_ok());
    assert!(r.transvection(&TransvectionSpec::Short { i: 1, j: -1, x: e12.clone() }).is_err());
    assert!(r.transvection(&TransvectionSpec::Short { i: 2, j: 1, x: e12 }).is_err());
    assert!(r.transvection(&TransvectionSpec::Dilation { i: 1, a: a.zero() }).is_err());
}

#[test]
fn ku1_even_orth() {
    let r = ring(FamilyKind::EvenOrthogonal, 2, 2);
    let t1 = ku1(&r, 1, ENUM_BUDGET, CLOSURE_BUDGET).unwrap();
    let t2 = ku1(&r, 2, ENUM_BUDGET, CLOSURE_BUDGET).unwrap();
    assert_eq!((t1.order(), t2.order()), (2, 2));
    let maps = StabilityMaps::compute(&r, &t1, &t2).unwrap();
    assert!(maps.surjective);
}

#[test]
fn relations_clean_and_fault_detected() {
    let r = ring(FamilyKind::Symplectic, 2, 3);
    let rep = verify_transvection_relations(&r, RelationOptions::default()).unwrap();
    assert!(rep.is_clean(), "{:?}", rep.violations);
    let bad = r.with_faults(FaultInjection { act_sign: true, ..Default::default() });
    let rep = verify_transvection_relations(&bad, RelationOptions::default()).unwrap();
    assert!(rep.names_axiom(RELATION_NAMES[10]), "{:?}", rep.violated_axioms());
}

#[test]
fn odd_orth_relations() {
    let r = ring(FamilyKind::OddOrthogonal, 2, 3);
    let rep = verify_transvection_relations(&r, RelationOptions::default()).unwrap();
    assert!(rep.is_clean(), "{:?}", rep.violations);
}

#[test]
fn packer_roundtrip() {
    let r = ring(FamilyKind::OddOrthogonal, 1, 3);
    let p = Packer::for_ring(&r);
    let a = r.alg();
    let x = a.elem((0..a.dim() as u32).map(|k| k % 3).collect()).unwrap();
    assert_eq!(p.decode(&p.encode(&x)), x);
}

#[test]
fn gluing_small() {
    let r = ring(FamilyKind::Symplectic, 2, 2);
    let rep = gluing_check(&r).unwrap();
    assert!(rep.is_clean(), "{:?}", rep.violations);
    let rep = merge_check(&r, CLOSURE_BUDGET).unwrap();
    assert!(rep.is_clean(), "{:?}", rep.violations);
}
