//! C ABI over `horadam-core`.
//!
//! Every fallible entry point returns a [`HoradamStatus`]. On failure, a
//! message describing the error is stored per thread and can be read back
//! with [`horadam_last_error_message`]. Class instances are passed around as
//! opaque [`HoradamSpec`] handles. Strings returned to the caller must be
//! released with [`horadam_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use horadam_core::bounds::{bound_report, Bound};
use horadam_core::verify::run_verification;
use horadam_core::{ClassKind, ClassSpec, Error, FsBranch, HoradamParams, PolyFamily};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoradamStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    AlphaOutOfRange = 3,
    NonFinite = 4,
    Degenerate = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoradamFamily {
    Fibonacci = 0,
    Lucas = 1,
    Pell = 2,
    PellLucas = 3,
    ChebyshevFirst = 4,
    ChebyshevSecond = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoradamClass {
    SStar = 0,
    Mocanu = 1,
    AlphaBlend = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoradamBranch {
    Inner = 0,
    Outer = 1,
    Boundary = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoradamParamsC {
    pub a: f64,
    pub b: f64,
    pub p: f64,
    pub q: f64,
}

/// Coefficients of the linear system linking `(a₂, a₃)` to `(u₁, u₂)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoradamSystem {
    pub c1: f64,
    pub e1: f64,
    pub e2: f64,
    pub f1: f64,
    pub f2: f64,
}

/// Bounds at one `nu`. A vacuous bound is reported as `+INFINITY`; an
/// infinite `threshold` means the inner branch applies for every `nu`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoradamBounds {
    pub a2_bound: f64,
    pub a3_bound: f64,
    pub fs_bound: f64,
    pub fs_branch: HoradamBranch,
    pub nu: f64,
    pub denom: f64,
    pub threshold: f64,
    pub h2_degenerate: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoradamVerifySummary {
    pub trials: u64,
    pub admissible: u64,
    pub violations: u64,
    pub max_ratio_a2: f64,
    pub max_ratio_a3: f64,
    pub max_ratio_fs: f64,
}

/// Opaque class instance: kind, `alpha`, Horadam parameters and `x`.
pub struct HoradamSpec(ClassSpec);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

struct Failure(HoradamStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::AlphaOutOfRange { .. } => HoradamStatus::AlphaOutOfRange,
            Error::NonFinite(_) => HoradamStatus::NonFinite,
            Error::DegenerateH2(_) => HoradamStatus::Degenerate,
            Error::InvalidArgument(_) | Error::Parse(_) | Error::UnknownCorollary(_) => HoradamStatus::InvalidArgument,
            _ => HoradamStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: HoradamStatus, msg: &str) -> Failure {
    Failure(status, msg.to_string())
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> HoradamStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            HoradamStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            HoradamStatus::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| fail(HoradamStatus::NullPointer, "output pointer is null"))
}

unsafe fn spec_ref<'a>(p: *const HoradamSpec) -> Result<&'a ClassSpec, Failure> {
    p.as_ref().map(|s| &s.0).ok_or_else(|| fail(HoradamStatus::NullPointer, "spec handle is null"))
}

unsafe fn nu_slice<'a>(nu: *const f64, len: usize) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Err(fail(HoradamStatus::InvalidArgument, "nu grid is empty"));
    }
    if nu.is_null() {
        return Err(fail(HoradamStatus::NullPointer, "nu grid pointer is null"));
    }
    Ok(std::slice::from_raw_parts(nu, len))
}

fn params(p: HoradamParamsC) -> Result<HoradamParams, Failure> {
    Ok(HoradamParams::new(p.a, p.b, p.p, p.q)?)
}

fn finite_or_inf(b: Bound) -> f64 {
    b.finite().unwrap_or(f64::INFINITY)
}

/// Library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn horadam_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn horadam_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn horadam_family_params(family: HoradamFamily, out: *mut HoradamParamsC) -> HoradamStatus {
    guard(|| {
        let f = match family {
            HoradamFamily::Fibonacci => PolyFamily::Fibonacci,
            HoradamFamily::Lucas => PolyFamily::Lucas,
            HoradamFamily::Pell => PolyFamily::Pell,
            HoradamFamily::PellLucas => PolyFamily::PellLucas,
            HoradamFamily::ChebyshevFirst => PolyFamily::ChebyshevFirst,
            HoradamFamily::ChebyshevSecond => PolyFamily::ChebyshevSecond,
        };
        let p = f.params();
        *out_ref(out)? = HoradamParamsC { a: p.a, b: p.b, p: p.p, q: p.q };
        Ok(())
    })
}

/// `h_n(x)` for `n >= 1`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn horadam_eval(params_in: HoradamParamsC, n: usize, x: f64, out: *mut f64) -> HoradamStatus {
    guard(|| {
        let p = params(params_in)?;
        if n == 0 {
            return Err(fail(HoradamStatus::InvalidArgument, "n must be at least 1"));
        }
        if !x.is_finite() {
            return Err(fail(HoradamStatus::NonFinite, "x is not finite"));
        }
        *out_ref(out)? = p.eval(n, x);
        Ok(())
    })
}

/// Writes `h_1(x) .. h_len(x)` into `buf`.
///
/// # Safety
/// `buf` must be NULL or valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn horadam_sequence(params_in: HoradamParamsC, x: f64, buf: *mut f64, len: usize) -> HoradamStatus {
    guard(|| {
        let p = params(params_in)?;
        if !x.is_finite() {
            return Err(fail(HoradamStatus::NonFinite, "x is not finite"));
        }
        if len == 0 {
            return Ok(());
        }
        if buf.is_null() {
            return Err(fail(HoradamStatus::NullPointer, "buffer is null"));
        }
        std::slice::from_raw_parts_mut(buf, len).copy_from_slice(&p.sequence(len, x));
        Ok(())
    })
}

/// Creates a class instance. On success `*out` owns a handle that must be
/// released with [`horadam_spec_free`].
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn horadam_spec_new(
    class: HoradamClass,
    alpha: f64,
    params_in: HoradamParamsC,
    x: f64,
    out: *mut *mut HoradamSpec,
) -> HoradamStatus {
    guard(|| {
        let slot = out_ref(out)?;
        let kind = match class {
            HoradamClass::SStar => ClassKind::SStar,
            HoradamClass::Mocanu => ClassKind::Mocanu,
            HoradamClass::AlphaBlend => ClassKind::AlphaBlend,
        };
        let spec = ClassSpec::new(kind, alpha, params(params_in)?, x)?;
        *slot = Box::into_raw(Box::new(HoradamSpec(spec)));
        Ok(())
    })
}

/// # Safety
/// `spec` must be NULL or a handle from [`horadam_spec_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn horadam_spec_free(spec: *mut HoradamSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// # Safety
/// `spec` must be a live handle; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn horadam_spec_coefficient_system(spec: *const HoradamSpec, out: *mut HoradamSystem) -> HoradamStatus {
    guard(|| {
        let s = spec_ref(spec)?.coefficient_system()?;
        *out_ref(out)? = HoradamSystem { c1: s.c1, e1: s.e1, e2: s.e2, f1: s.f1, f2: s.f2 };
        Ok(())
    })
}

/// # Safety
/// `spec` must be a live handle; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn horadam_spec_bounds(spec: *const HoradamSpec, nu: f64, out: *mut HoradamBounds) -> HoradamStatus {
    guard(|| {
        let spec = spec_ref(spec)?;
        if !nu.is_finite() {
            return Err(fail(HoradamStatus::NonFinite, "nu is not finite"));
        }
        let r = bound_report(spec, nu)?;
        *out_ref(out)? = HoradamBounds {
            a2_bound: finite_or_inf(r.a2_bound),
            a3_bound: finite_or_inf(r.a3_bound),
            fs_bound: finite_or_inf(r.fs_bound),
            fs_branch: match r.fs_branch {
                FsBranch::Inner => HoradamBranch::Inner,
                FsBranch::Outer => HoradamBranch::Outer,
                FsBranch::Boundary => HoradamBranch::Boundary,
            },
            nu: r.nu,
            denom: r.denom,
            threshold: r.threshold,
            h2_degenerate: r.h2_degenerate,
        };
        Ok(())
    })
}

/// Monte-Carlo certification; deterministic for a given `seed`.
///
/// # Safety
/// `spec` must be a live handle, `nu` valid for `nu_len` reads and `out`
/// NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn horadam_spec_verify(
    spec: *const HoradamSpec,
    nu: *const f64,
    nu_len: usize,
    trials: u64,
    seed: u64,
    strict_schwarz: bool,
    out: *mut HoradamVerifySummary,
) -> HoradamStatus {
    guard(|| {
        let spec = spec_ref(spec)?;
        let grid = nu_slice(nu, nu_len)?;
        let slot = out_ref(out)?;
        let r = run_verification(spec, grid, trials, seed, strict_schwarz)?;
        *slot = HoradamVerifySummary {
            trials: r.trials,
            admissible: r.admissible,
            violations: r.violations,
            max_ratio_a2: r.max_ratio_a2,
            max_ratio_a3: r.max_ratio_a3,
            max_ratio_fs: r.max_ratio_fs,
        };
        Ok(())
    })
}

/// Same as [`horadam_spec_verify`] but returns the full JSON report. The
/// string must be released with [`horadam_string_free`].
///
/// # Safety
/// As for [`horadam_spec_verify`]; `out_json` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn horadam_spec_verify_json(
    spec: *const HoradamSpec,
    nu: *const f64,
    nu_len: usize,
    trials: u64,
    seed: u64,
    strict_schwarz: bool,
    out_json: *mut *mut c_char,
) -> HoradamStatus {
    guard(|| {
        let spec = spec_ref(spec)?;
        let grid = nu_slice(nu, nu_len)?;
        let slot = out_ref(out_json)?;
        let r = run_verification(spec, grid, trials, seed, strict_schwarz)?;
        let json = serde_json::to_string(&r).map_err(|e| fail(HoradamStatus::Internal, &e.to_string()))?;
        *slot = CString::new(json).map_err(|e| fail(HoradamStatus::Internal, &e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn horadam_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Returns the message of `status` as a static string. Do not free.
#[no_mangle]
pub extern "C" fn horadam_status_message(status: HoradamStatus) -> *const c_char {
    let s: &'static CStr = match status {
        HoradamStatus::Ok => c"ok",
        HoradamStatus::NullPointer => c"null pointer",
        HoradamStatus::InvalidArgument => c"invalid argument",
        HoradamStatus::AlphaOutOfRange => c"alpha out of range",
        HoradamStatus::NonFinite => c"non-finite input",
        HoradamStatus::Degenerate => c"degenerate parameters",
        HoradamStatus::Internal => c"internal error",
        HoradamStatus::Panic => c"panic",
    };
    s.as_ptr()
}
