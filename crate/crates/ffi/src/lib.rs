//! C ABI over the fluctus engines.
//!
//! Requests are the JSON documents accepted by the command line. Every
//! function returns a [`FluctusStatus`]; on failure the message is available
//! from [`fluctus_last_error`] on the same thread. Strings handed out by the
//! library are released with [`fluctus_string_free`], requests with
//! [`fluctus_request_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fluctus::algebra::Scalar;
use fluctus::annular::{enumerate_nc2, enumerate_nc_annular_partitions, enumerate_nc_disc, enumerate_snc};
use fluctus::fock::{fluct_gauss_fock, fluct_poisson_fock};
use fluctus::io::{CovarianceRequest, Resolved};
use fluctus::perm::AnnulusProfile;
use fluctus::rmt::{exact_gue_cumulant, exact_wishart_cumulant, Family};
use fluctus::theory::{gauss_cov, psicheck_sum, wishart_cov};
use fluctus::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FluctusStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    Guard = 5,
    Unsupported = 6,
    Panic = 7,
}

/// Engine evaluating the second-order limit of a request.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FluctusEngine {
    /// Sum over annular non-crossing diagrams.
    Combinatorial = 0,
    /// Vacuum expectation on the cyclic Fock space.
    Fock = 1,
    /// ψ̌ sum over annular non-crossing partitions; Wishart requests only.
    Psicheck = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FluctusKind {
    Pairings = 0,
    Partitions = 1,
    Permutations = 2,
}

/// Approximate value of an exact complex rational.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FluctusComplex {
    pub re: f64,
    pub im: f64,
}

/// A parsed and resolved covariance request.
pub struct FluctusRequest {
    inner: Resolved,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> FluctusStatus {
    match e {
        Error::Parse(_) | Error::UnknownSymbol(_) => FluctusStatus::Parse,
        Error::Guard { .. } => FluctusStatus::Guard,
        _ => FluctusStatus::Invalid,
    }
}

struct Failure(FluctusStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FluctusStatus::NullPointer, format!("`{what}` is null"))
}

/// Runs `f`, recording any error or panic for [`fluctus_last_error`].
fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> FluctusStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FluctusStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            FluctusStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(FluctusStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn write_scalar(v: &Scalar, text: *mut *mut c_char, value: *mut FluctusComplex) {
    if !text.is_null() {
        *text = CString::new(v.to_string()).expect("scalars print without NUL").into_raw();
    }
    if !value.is_null() {
        let (re, im) = v.to_f64();
        *value = FluctusComplex { re, im };
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn fluctus_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fluctus_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fluctus_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON request. On success `*out` owns a new request.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fluctus_request_parse(json: *const c_char, out: *mut *mut FluctusRequest) -> FluctusStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let inner = CovarianceRequest::from_json(text)?.resolve(None)?;
        *out = Box::into_raw(Box::new(FluctusRequest { inner }));
        Ok(())
    })
}

/// # Safety
/// `req` must be null or a request from [`fluctus_request_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fluctus_request_free(req: *mut FluctusRequest) {
    if !req.is_null() {
        drop(Box::from_raw(req));
    }
}

/// Second-order limit of the request's `left` and `right` words. The exact
/// value is written to `*text` as `a/b` or `a/b + c/d i` (free with
/// [`fluctus_string_free`]) and its approximation to `*value`; either may be
/// null.
///
/// # Safety
/// `req` must be a live request; `text` and `value` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fluctus_covariance(
    req: *const FluctusRequest,
    engine: FluctusEngine,
    text: *mut *mut c_char,
    value: *mut FluctusComplex,
) -> FluctusStatus {
    guarded(|| {
        let r = &req.as_ref().ok_or_else(|| null("req"))?.inner;
        r.require_pair()?;
        let v = match (&r.family, engine) {
            (Family::Gaussian { space, .. }, FluctusEngine::Combinatorial) => {
                gauss_cov(space, &r.vectors(&r.left), &r.vectors(&r.right))?
            }
            (Family::Gaussian { space, .. }, FluctusEngine::Fock) => {
                fluct_gauss_fock(space, &r.vectors(&r.left), &r.vectors(&r.right))?
            }
            (Family::Gaussian { .. }, FluctusEngine::Psicheck) => {
                return Err(Failure(
                    FluctusStatus::Unsupported,
                    "the psicheck engine applies to wishart requests".into(),
                ))
            }
            (Family::Wishart { alg, .. }, FluctusEngine::Combinatorial) => {
                wishart_cov(alg, &r.matrices(&r.left), &r.matrices(&r.right))?
            }
            (Family::Wishart { alg, .. }, FluctusEngine::Fock) => {
                fluct_poisson_fock(alg, &r.matrices(&r.left), &r.matrices(&r.right))?
            }
            (Family::Wishart { alg, .. }, FluctusEngine::Psicheck) => {
                let all: Vec<_> = r.matrices(&r.left).into_iter().chain(r.matrices(&r.right)).collect();
                psicheck_sum(alg, r.left.len(), r.right.len(), &all)?
            }
        };
        write_scalar(&v, text, value);
        Ok(())
    })
}

/// Exact covariance of the two traces at matrix size `n`.
///
/// # Safety
/// As for [`fluctus_covariance`].
#[no_mangle]
pub unsafe extern "C" fn fluctus_oracle_covariance(
    req: *const FluctusRequest,
    n: usize,
    text: *mut *mut c_char,
    value: *mut FluctusComplex,
) -> FluctusStatus {
    guarded(|| {
        let r = &req.as_ref().ok_or_else(|| null("req"))?.inner;
        r.require_pair()?;
        let v = match &r.family {
            Family::Gaussian { space, .. } => {
                exact_gue_cumulant(space, &[r.vectors(&r.left), r.vectors(&r.right)], n)?
            }
            Family::Wishart { alg, .. } => {
                exact_wishart_cumulant(alg, &[r.matrices(&r.left), r.matrices(&r.right)], n)?
            }
        };
        write_scalar(&v, text, value);
        Ok(())
    })
}

/// Number of non-crossing objects of `kind` on the circles with `len`
/// point counts in `sizes`.
///
/// # Safety
/// `sizes` must point to `len` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fluctus_enumerate_count(
    kind: FluctusKind,
    sizes: *const usize,
    len: usize,
    out: *mut usize,
) -> FluctusStatus {
    guarded(|| {
        if sizes.is_null() {
            return Err(null("sizes"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let sizes = std::slice::from_raw_parts(sizes, len).to_vec();
        let profile = AnnulusProfile::new(sizes.clone())?;
        *out = match kind {
            FluctusKind::Pairings => enumerate_nc2(&profile)?.len(),
            FluctusKind::Permutations => enumerate_snc(&profile)?.len(),
            FluctusKind::Partitions => match sizes[..] {
                [n] => enumerate_nc_disc(n)?.len(),
                [n, m] => enumerate_nc_annular_partitions(n, m)?.len(),
                _ => {
                    return Err(Failure(
                        FluctusStatus::Unsupported,
                        "partitions are enumerated on one or two circles".into(),
                    ))
                }
            },
        };
        Ok(())
    })
}
