//! C ABI over the `oddform` library.
//!
//! Rings are opaque `OfRing` handles. Every fallible call returns an `OfStatus`;
//! on failure `of_last_error` describes the most recent error on the calling thread.
//! Strings returned through out-parameters are owned by the caller and released
//! with `of_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use oddform::families::{build_example, FamilyKind};
use oddform::oddform::{OddFormRing, RingJson};
use oddform::stability::reduce_to_smaller;
use oddform::unitary::{elementary_subgroup, enumerate_unitary, CLOSURE_BUDGET, ENUM_BUDGET};
use oddform::Error;

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OfStatus {
    Ok = 0,
    /// a mathematical check found a violation
    Violation = 1,
    Capacity = 2,
    Input = 3,
    Internal = 4,
    NullPointer = 5,
    Panic = 6,
}

/// Opaque ring handle.
pub struct OfRing {
    ring: OddFormRing,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> OfStatus {
    match e {
        Error::Capacity(_) => OfStatus::Capacity,
        Error::Internal(_) => OfStatus::Internal,
        Error::Structural(_) | Error::Precondition(_) | Error::Input(_) => OfStatus::Input,
    }
}

enum Fail {
    Core(Error),
    Null,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<OfStatus, Fail>) -> OfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument");
            OfStatus::NullPointer
        }
        Err(_) => {
            set_error("panic inside oddform");
            OfStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail::Null
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Error::input("argument is not UTF-8").into())
}

unsafe fn ring_arg<'a>(p: *const OfRing) -> Result<&'a OddFormRing, Fail> {
    p.as_ref().map(|r| &r.ring).ok_or_else(null)
}

unsafe fn beta_arg(ring: &OddFormRing, p: *const u32, len: usize) -> Result<oddform::algebra::AlgElem, Fail> {
    if p.is_null() {
        return Err(null());
    }
    let v = std::slice::from_raw_parts(p, len).to_vec();
    ring.alg().elem(v).map_err(|e| Error::input(e.to_string()).into())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| Error::internal("string contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

fn view(ring: &OddFormRing, n: u32) -> Result<usize, Error> {
    let n = n as usize;
    if n > ring.rank() {
        return Err(Error::input(format!("rank {n} exceeds ring rank {}", ring.rank())));
    }
    Ok(n)
}

fn publish(out: *mut *mut OfRing, ring: OddFormRing) -> Result<OfStatus, Fail> {
    if out.is_null() {
        return Err(null());
    }
    unsafe { *out = Box::into_raw(Box::new(OfRing { ring })) };
    Ok(OfStatus::Ok)
}

/// Builds one of the shipped families ("linear", "symplectic", "even-orth", "odd-orth").
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_ring_new(family: *const c_char, modulus: u32, rank: u32, out: *mut *mut OfRing) -> OfStatus {
    guard(|| {
        let kind: FamilyKind = str_arg(family)?.parse()?;
        publish(out, build_example(kind, rank as usize, modulus)?)
    })
}

/// Builds a ring from a JSON descriptor.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_ring_from_json(json: *const c_char, out: *mut *mut OfRing) -> OfStatus {
    guard(|| {
        let j: RingJson = serde_json::from_str(str_arg(json)?).map_err(|e| Error::input(e.to_string()))?;
        publish(out, OddFormRing::from_json(&j)?)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `ring` must come from `of_ring_new`/`of_ring_from_json` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn of_ring_free(ring: *mut OfRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Dimension of the algebra, i.e. the length of every β vector; 0 for null.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn of_ring_dim(ring: *const OfRing) -> usize {
    ring.as_ref().map_or(0, |r| r.ring.alg().dim())
}

/// Rank of the hyperbolic family; 0 for null.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn of_ring_rank(ring: *const OfRing) -> usize {
    ring.as_ref().map_or(0, |r| r.ring.rank())
}

/// |U(n)| by exhaustive enumeration.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_unitary_order(ring: *const OfRing, n: u32, out: *mut u64) -> OfStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let set = enumerate_unitary(r, view(r, n)?, ENUM_BUDGET)?;
        *out.as_mut().ok_or_else(null)? = set.len() as u64;
        Ok(OfStatus::Ok)
    })
}

/// |EU(n)| by closure.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_elementary_order(ring: *const OfRing, n: u32, out: *mut u64) -> OfStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let set = elementary_subgroup(r, view(r, n)?, CLOSURE_BUDGET)?;
        *out.as_mut().ok_or_else(null)? = set.len() as u64;
        Ok(OfStatus::Ok)
    })
}

/// Writes whether β (length `len` = dim) defines a unitary element.
///
/// # Safety
/// `beta` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_is_unitary(ring: *const OfRing, beta: *const u32, len: usize, out: *mut bool) -> OfStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let b = beta_arg(r, beta, len)?;
        *out.as_mut().ok_or_else(null)? = r.is_unitary_beta(&b);
        Ok(OfStatus::Ok)
    })
}

/// β(gh) into `out`; both inputs must be unitary.
///
/// # Safety
/// `g`, `h` and `out` must each point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn of_compose(
    ring: *const OfRing,
    g: *const u32,
    h: *const u32,
    len: usize,
    out: *mut u32,
) -> OfStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let gm = r.unitary_membership(&beta_arg(r, g, len)?).ok_or_else(|| Error::input("g is not unitary"))?;
        let hm = r.unitary_membership(&beta_arg(r, h, len)?).ok_or_else(|| Error::input("h is not unitary"))?;
        if out.is_null() {
            return Err(null());
        }
        let prod = r.compose(&gm, &hm);
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(prod.beta().coords());
        Ok(OfStatus::Ok)
    })
}

/// Runs the algebra, odd form, family and relation suites; the JSON report goes to `out`.
/// Returns `Violation` when any suite is not clean.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_verify_report_json(ring: *const OfRing, seed: u64, out: *mut *mut c_char) -> OfStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let rep = oddform::cli::verify_ring(r, seed, false)?;
        put_string(out, rep.to_json())?;
        Ok(if rep.exit_code() == 0 { OfStatus::Ok } else { OfStatus::Violation })
    })
}

/// Verified reduction certificate of g ∈ U(n) as JSON.
///
/// # Safety
/// `beta` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn of_reduce(
    ring: *const OfRing,
    beta: *const u32,
    len: usize,
    n: u32,
    out: *mut *mut c_char,
) -> OfStatus {
    guard(|| {
        let r = ring_arg(ring)?;
        let g = r.unitary_membership(&beta_arg(r, beta, len)?).ok_or_else(|| Error::input("element is not unitary"))?;
        let cert = reduce_to_smaller(r, &g, view(r, n)?)?;
        put_string(out, cert.to_json()?)?;
        Ok(OfStatus::Ok)
    })
}

/// Frees a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn of_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Last error message on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn of_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
