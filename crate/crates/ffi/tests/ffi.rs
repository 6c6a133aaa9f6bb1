use std::ffi::{CStr, CString};
use std::ptr;

use oddform_ffi::*;

fn ring(family: &str, m: u32, n: u32) -> *mut OfRing {
    let f = CString::new(family).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { of_ring_new(f.as_ptr(), m, n, &mut out) }, OfStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let p = of_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take(s: *mut std::ffi::c_char) -> String {
    let v = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { of_string_free(s) };
    v
}

#[test]
fn orders_through_the_abi() {
    let r = ring("symplectic", 2, 2);
    let mut u = 0u64;
    let mut e = 0u64;
    unsafe {
        assert_eq!(of_unitary_order(r, 2, &mut u), OfStatus::Ok);
        assert_eq!(of_elementary_order(r, 2, &mut e), OfStatus::Ok);
        assert_eq!(of_unitary_order(r, 1, &mut u), OfStatus::Ok);
        assert_eq!(u, 6);
        assert_eq!(of_ring_rank(r), 2);
        of_ring_free(r);
    }
    assert_eq!(e, 720);
}

#[test]
fn identity_compose_and_reduce() {
    let r = ring("even-orth", 2, 2);
    let d = unsafe { of_ring_dim(r) };
    assert!(d > 0);
    let zero = vec![0u32; d];
    let mut ok = false;
    let mut prod = vec![7u32; d];
    let mut cert = ptr::null_mut();
    unsafe {
        assert_eq!(of_is_unitary(r, zero.as_ptr(), d, &mut ok), OfStatus::Ok);
        assert!(ok);
        assert_eq!(of_compose(r, zero.as_ptr(), zero.as_ptr(), d, prod.as_mut_ptr()), OfStatus::Ok);
        assert_eq!(prod, zero);
        assert_eq!(of_reduce(r, zero.as_ptr(), d, 2, &mut cert), OfStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(&take(cert)).unwrap();
        assert_eq!(json["n"], 2);
        of_ring_free(r);
    }
}

#[test]
fn verify_report_is_clean() {
    let r = ring("odd-orth", 3, 1);
    let mut out = ptr::null_mut();
    let st = unsafe { of_verify_report_json(r, 7, &mut out) };
    let json: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(st, OfStatus::Ok, "{json}");
    assert!(json["results"].as_array().is_some_and(|a| !a.is_empty()));
    unsafe { of_ring_free(r) };
}

#[test]
fn error_paths() {
    let bad = CString::new("quaternion").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { of_ring_new(bad.as_ptr(), 2, 2, &mut out) }, OfStatus::Input);
    assert!(out.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { of_ring_new(ptr::null(), 2, 2, &mut out) }, OfStatus::NullPointer);

    let junk = CString::new("{not json").unwrap();
    assert_eq!(unsafe { of_ring_from_json(junk.as_ptr(), &mut out) }, OfStatus::Input);

    let r = ring("symplectic", 2, 1);
    let d = unsafe { of_ring_dim(r) };
    let mut n = 0u64;
    let mut b = false;
    let mut s = ptr::null_mut();
    let ones = vec![1u32; d];
    unsafe {
        assert_eq!(of_unitary_order(r, 5, &mut n), OfStatus::Input);
        assert_eq!(of_unitary_order(r, 1, ptr::null_mut()), OfStatus::NullPointer);
        assert_eq!(of_is_unitary(r, ones.as_ptr(), d + 1, &mut b), OfStatus::Input);
        assert_eq!(of_reduce(r, vec![0u32; d].as_ptr(), d, 1, &mut s), OfStatus::Input);
        assert_eq!(of_ring_dim(ptr::null()), 0);
        of_ring_free(ptr::null_mut());
        of_string_free(ptr::null_mut());
        of_ring_free(r);
    }
}

#[test]
fn descriptor_round_trip() {
    let r = ring("linear", 3, 1);
    let d = unsafe { of_ring_dim(r) };
    unsafe { of_ring_free(r) };
    let desc = oddform::families::build_example(oddform::families::FamilyKind::Linear, 1, 3).unwrap().to_json().unwrap();
    let text = CString::new(serde_json::to_string(&desc).unwrap()).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { of_ring_from_json(text.as_ptr(), &mut out) }, OfStatus::Ok);
    assert_eq!(unsafe { of_ring_dim(out) }, d);
    unsafe { of_ring_free(out) };
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/oddform.h")).unwrap();
    for sym in ["of_ring_new", "of_reduce", "of_last_error", "OF_STATUS_NULL_POINTER", "typedef struct OfRing OfRing"] {
        assert!(h.contains(sym), "{sym} missing from header");
    }
}
