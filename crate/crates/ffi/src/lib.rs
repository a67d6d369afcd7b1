//! C interface to `intbasis`.
//!
//! Curves and results are opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns an
//! [`IbStatus`]; the message of the last failure on the calling thread is
//! available from [`ib_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use intbasis::io::{parse_curve, CurveInput};
use intbasis::run::{run, Algorithm, RunOptions, RunOutput, VerifyLevel};
use intbasis::Error;

/// Status codes; the nonzero input/verification/internal values match the
/// command line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IbStatus {
    Ok = 0,
    VerificationFailed = 2,
    InputError = 3,
    InternalError = 4,
    NullPointer = 5,
    InvalidArgument = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IbAlgorithm {
    VanHoeij = 0,
    Trager = 1,
    Boehm = 2,
    All = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IbVerify {
    None = 0,
    Integrality = 1,
    Full = 2,
}

/// A validated curve.
pub struct IbCurve {
    input: CurveInput,
}

/// A computed basis with its JSON rendering.
pub struct IbResult {
    out: RunOutput,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn fail(e: &Error) -> IbStatus {
    set_error(e.to_string());
    match e.exit_code() {
        3 => IbStatus::InputError,
        _ => IbStatus::InternalError,
    }
}

/// Runs `f`, turning panics into InternalError.
fn guarded(f: impl FnOnce() -> IbStatus) -> IbStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        IbStatus::InternalError
    })
}

/// Message for the last failed call on this thread (empty if none). The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ib_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `{"p": ..., "f": [[i, j, c], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ib_curve_from_json(
    json: *const c_char,
    out: *mut *mut IbCurve,
) -> IbStatus {
    if json.is_null() || out.is_null() {
        set_error("null pointer");
        return IbStatus::NullPointer;
    }
    *out = ptr::null_mut();
    guarded(|| {
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            set_error("input is not UTF-8");
            return IbStatus::InputError;
        };
        match parse_curve(text) {
            Ok(input) => {
                *out = Box::into_raw(Box::new(IbCurve { input }));
                IbStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Builds a curve from `nterms` triples (i, j, c) stored consecutively in
/// `terms`, each standing for c·x^i·y^j.
///
/// # Safety
/// `terms` must point to 3·`nterms` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ib_curve_new(
    p: u64,
    terms: *const i64,
    nterms: usize,
    out: *mut *mut IbCurve,
) -> IbStatus {
    if out.is_null() || (terms.is_null() && nterms > 0) {
        set_error("null pointer");
        return IbStatus::NullPointer;
    }
    *out = ptr::null_mut();
    guarded(|| {
        let raw = if nterms == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(terms, 3 * nterms)
        };
        let mut t = Vec::with_capacity(nterms);
        for c in raw.chunks_exact(3) {
            if c[0] < 0 || c[1] < 0 {
                set_error("negative exponent");
                return IbStatus::InvalidArgument;
            }
            t.push((c[0] as usize, c[1] as usize, c[2]));
        }
        match CurveInput::new(p, &t) {
            Ok(input) => {
                *out = Box::into_raw(Box::new(IbCurve { input }));
                IbStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// deg_y f, or 0 for a null handle.
///
/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ib_curve_degree(curve: *const IbCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.input.n())
}

/// # Safety
/// `curve` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ib_curve_free(curve: *mut IbCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Computes the integral basis. With `IB_ALGORITHM_ALL` the three algorithms
/// are run and compared. Returns VerificationFailed (with the result still
/// stored in `out`) if they disagree or a requested check fails.
///
/// # Safety
/// `curve` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ib_compute(
    curve: *const IbCurve,
    algorithm: IbAlgorithm,
    verify: IbVerify,
    seed: u64,
    out: *mut *mut IbResult,
) -> IbStatus {
    if curve.is_null() || out.is_null() {
        set_error("null pointer");
        return IbStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let input = &(*curve).input;
    guarded(|| {
        let opts = RunOptions {
            algorithm: match algorithm {
                IbAlgorithm::VanHoeij => Algorithm::VanHoeij,
                IbAlgorithm::Trager => Algorithm::Trager,
                IbAlgorithm::Boehm => Algorithm::Boehm,
                IbAlgorithm::All => Algorithm::All,
            },
            verify: match verify {
                IbVerify::None => VerifyLevel::None,
                IbVerify::Integrality => VerifyLevel::Integrality,
                IbVerify::Full => VerifyLevel::Full,
            },
            seed,
            ..Default::default()
        };
        match run(input, &opts) {
            Ok(o) => {
                let json =
                    CString::new(o.to_json(input, &opts).to_string()).expect("JSON has no NUL");
                let passed = o.passed();
                *out = Box::into_raw(Box::new(IbResult { out: o, json }));
                if passed {
                    IbStatus::Ok
                } else {
                    set_error("verification failed");
                    IbStatus::VerificationFailed
                }
            }
            Err(e) => fail(&e),
        }
    })
}

/// Number of basis elements, or 0 for a null handle.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ib_result_size(res: *const IbResult) -> usize {
    res.as_ref().map_or(0, |r| r.out.basis.n)
}

/// Degree of the denominator of basis element `d` as a polynomial in x.
///
/// # Safety
/// `res` must be a live handle and `degree` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ib_result_denominator_degree(
    res: *const IbResult,
    d: usize,
    degree: *mut usize,
) -> IbStatus {
    let (Some(r), false) = (res.as_ref(), degree.is_null()) else {
        set_error("null pointer");
        return IbStatus::NullPointer;
    };
    let b = &r.out.basis;
    if d >= b.n {
        set_error(format!("element {d} out of range"));
        return IbStatus::InvalidArgument;
    }
    *degree = b
        .denominator_factors
        .iter()
        .zip(&b.elements[d].den_exp)
        .map(|(p, e)| p.degree().unwrap_or(0) * e)
        .sum();
    IbStatus::Ok
}

/// The result as JSON. The string is owned by `res`.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ib_result_json(res: *const IbResult) -> *const c_char {
    res.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `res` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ib_result_free(res: *mut IbResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}
