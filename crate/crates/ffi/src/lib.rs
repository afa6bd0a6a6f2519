//! C ABI over the semigroup lab. Models and families are opaque handles;
//! reports cross the boundary as owned JSON strings released with
//! `sl_string_free`. Every entry point returns an `SlStatus` and never
//! unwinds into C.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_rational::BigRational;
use semigroup_lab::amenability::{check_left_reversible, check_right_reversible, folner_search, FolnerBudget};
use semigroup_lab::ideal_engine::{check_independence, check_quasi_lattice, ConstructibleFamily, FamilyOptions};
use semigroup_lab::parse::parse_model;
use semigroup_lab::{LabError, SemigroupModel};

/// Result of every call. `SL_WITNESS` means the call succeeded and found a
/// mathematical negative (counterexample, disjoint pair, exhausted search).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    SlOk = 0,
    SlWitness = 1,
    SlParseError = 2,
    SlBudgetError = 3,
    SlNullPointer = 4,
    SlInvalidArgument = 5,
    SlUnsupported = 6,
    SlInternalError = 7,
}

/// Opaque semigroup model.
pub struct SlModel(SemigroupModel);

/// Opaque family of constructible right ideals.
pub struct SlFamily(ConstructibleFamily);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &LabError) -> SlStatus {
    match e {
        LabError::Parse(_) | LabError::InvalidElement(_) => SlStatus::SlParseError,
        LabError::Budget(_) | LabError::SearchExhausted { .. } | LabError::WordTooLong { .. } => {
            SlStatus::SlBudgetError
        }
        LabError::Unsupported(_) => SlStatus::SlUnsupported,
        LabError::Verification(_) => SlStatus::SlInternalError,
        _ => SlStatus::SlInvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<SlStatus, SlStatus>) -> SlStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) | Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside the library");
            SlStatus::SlInternalError
        }
    }
}

fn lab<T>(r: semigroup_lab::Result<T>) -> Result<T, SlStatus> {
    r.map_err(|e| {
        set_error(&e.to_string());
        status_of(&e)
    })
}

fn null_check<T>(p: *const T) -> Result<(), SlStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(SlStatus::SlNullPointer);
    }
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, v: &serde_json::Value) -> Result<(), SlStatus> {
    let s = CString::new(v.to_string()).map_err(|_| SlStatus::SlInternalError)?;
    *out = s.into_raw();
    Ok(())
}

/// Message for the last failing call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a model such as `free:2` or `axb:Q(sqrt(-5))`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_model_parse(spec: *const c_char, out: *mut *mut SlModel) -> SlStatus {
    guard(|| {
        null_check(spec)?;
        null_check(out)?;
        let s = CStr::from_ptr(spec).to_str().map_err(|_| {
            set_error("model spec is not UTF-8");
            SlStatus::SlParseError
        })?;
        let m = lab(parse_model(s))?;
        *out = Box::into_raw(Box::new(SlModel(m)));
        Ok(SlStatus::SlOk)
    })
}

/// # Safety
/// `model` must come from `sl_model_parse` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sl_model_free(model: *mut SlModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Canonical text form of the model.
///
/// # Safety
/// `model` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_model_describe(model: *const SlModel, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        null_check(model)?;
        null_check(out)?;
        let s = CString::new((*model).0.to_string()).map_err(|_| SlStatus::SlInternalError)?;
        *out = s.into_raw();
        Ok(SlStatus::SlOk)
    })
}

/// Closure of `{P, ∅}` for `depth` rounds.
///
/// # Safety
/// `model` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_family_compute(
    model: *const SlModel,
    depth: usize,
    union_closed: bool,
    out: *mut *mut SlFamily,
) -> SlStatus {
    guard(|| {
        null_check(model)?;
        null_check(out)?;
        if depth == 0 {
            set_error("depth must be at least 1");
            return Err(SlStatus::SlBudgetError);
        }
        let opts = FamilyOptions::new(depth).union_closed(union_closed);
        let fam = lab(ConstructibleFamily::compute(&(*model).0, opts))?;
        *out = Box::into_raw(Box::new(SlFamily(fam)));
        Ok(SlStatus::SlOk)
    })
}

/// # Safety
/// `family` must come from `sl_family_compute` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sl_family_free(family: *mut SlFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// # Safety
/// `family` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_family_len(family: *const SlFamily, out: *mut usize) -> SlStatus {
    guard(|| {
        null_check(family)?;
        null_check(out)?;
        *out = (*family).0.len();
        Ok(SlStatus::SlOk)
    })
}

/// # Safety
/// `family` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_family_to_json(family: *const SlFamily, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        null_check(family)?;
        null_check(out)?;
        write_json(out, &(*family).0.to_json())?;
        Ok(SlStatus::SlOk)
    })
}

/// Independence check; `SL_WITNESS` with a counterexample in the report.
///
/// # Safety
/// `family` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_check_independence(
    family: *const SlFamily,
    window_radius: usize,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        null_check(family)?;
        null_check(out)?;
        let r = lab(check_independence(&(*family).0, window_radius))?;
        write_json(out, &r.to_json())?;
        Ok(if r.passed() { SlStatus::SlOk } else { SlStatus::SlWitness })
    })
}

/// Quasi-lattice check; `SL_WITNESS` with a non-principal ideal.
///
/// # Safety
/// `family` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_check_quasi_lattice(
    family: *const SlFamily,
    window_radius: usize,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        null_check(family)?;
        null_check(out)?;
        let r = lab(check_quasi_lattice(&(*family).0, window_radius))?;
        write_json(out, &r.to_json())?;
        Ok(if r.passed() { SlStatus::SlOk } else { SlStatus::SlWitness })
    })
}

/// Reversibility on `ball(radius)`: `right = false` for `pP ∩ qP`,
/// `true` for `Pp ∩ Pq`.
///
/// # Safety
/// `model` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_check_reversible(
    model: *const SlModel,
    right: bool,
    radius: usize,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        null_check(model)?;
        null_check(out)?;
        let m = &(*model).0;
        let r = lab(if right { check_right_reversible(m, radius) } else { check_left_reversible(m, radius) })?;
        write_json(out, &r.to_json())?;
        Ok(if r.holds_on_window { SlStatus::SlOk } else { SlStatus::SlWitness })
    })
}

/// Følner search with `C` the generators and `ε = eps_num/eps_den`;
/// `SL_WITNESS` when the budget is exhausted.
///
/// # Safety
/// `model` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_folner_search(
    model: *const SlModel,
    eps_num: i64,
    eps_den: i64,
    out: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        null_check(model)?;
        null_check(out)?;
        if eps_den == 0 {
            set_error("zero denominator");
            return Err(SlStatus::SlInvalidArgument);
        }
        let m = &(*model).0;
        let eps = BigRational::new(eps_num.into(), eps_den.into());
        let r = lab(folner_search(m, m.generators(), &eps, &FolnerBudget::default()))?;
        write_json(out, &r.to_json())?;
        Ok(if r.certificate().is_some() { SlStatus::SlOk } else { SlStatus::SlWitness })
    })
}
