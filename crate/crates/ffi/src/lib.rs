//! C ABI over `asymlog`.
//!
//! Every fallible entry point returns an [`AsymlogStatus`] and writes its
//! result through an out-pointer. Handles are opaque and must be released
//! with the matching `*_free` function. Strings returned by the library are
//! released with [`asymlog_string_free`]. After a non-zero status,
//! [`asymlog_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use asymlog::constants::{cpq, glaisher, stieltjes, zeta_derivative, ConstantResult};
use asymlog::metazeta::{bootstrap_ci, meta_zeta, BootstrapTable};
use asymlog::polylog::{li_reflection, nielsen, polylog};
use asymlog::real::{bits_for, format_real, parse_real, Real};
use asymlog::suites::{run_suite, Suite, SuiteParams};
use asymlog::Error;

/// Status codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymlogStatus {
    Ok = 0,
    Domain = 1,
    Budget = 2,
    Verification = 3,
    Unresolved = 4,
    FitResidual = 5,
    Precision = 6,
    Convergence = 7,
    NullPointer = 8,
    InvalidString = 9,
    OutOfRange = 10,
    Panic = 11,
}

impl From<&Error> for AsymlogStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => AsymlogStatus::Domain,
            Error::Budget(_) => AsymlogStatus::Budget,
            Error::Verification(_) => AsymlogStatus::Verification,
            Error::Unresolved(_) => AsymlogStatus::Unresolved,
            Error::FitResidual { .. } => AsymlogStatus::FitResidual,
            Error::Precision { .. } => AsymlogStatus::Precision,
            Error::Convergence(_) => AsymlogStatus::Convergence,
        }
    }
}

/// A computed real number, with its exact rational form when known.
pub struct AsymlogValue {
    value: Real,
    exact: Option<String>,
    digits: u32,
    residual: Option<Real>,
}

/// Coefficients `c_0, c_1, ...` of the small-`s` incomplete-gamma expansion.
pub struct AsymlogBootstrap {
    table: BootstrapTable,
    digits: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: AsymlogStatus, msg: impl Into<String>) -> AsymlogStatus {
    set_error(msg.into());
    status
}

fn guard<F>(f: F) -> AsymlogStatus
where
    F: FnOnce() -> Result<(), AsymlogStatus>,
{
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AsymlogStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(AsymlogStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: asymlog::Result<T>) -> Result<T, AsymlogStatus> {
    r.map_err(|e| fail(AsymlogStatus::from(&e), e.to_string()))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, AsymlogStatus> {
    if s.is_null() {
        return Err(fail(AsymlogStatus::NullPointer, "string argument is null"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(AsymlogStatus::InvalidString, "string argument is not UTF-8"))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), AsymlogStatus> {
    if out.is_null() {
        return Err(fail(AsymlogStatus::NullPointer, "output pointer is null"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

fn check_out<T>(out: *mut T) -> Result<(), AsymlogStatus> {
    if out.is_null() {
        Err(fail(AsymlogStatus::NullPointer, "output pointer is null"))
    } else {
        Ok(())
    }
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, AsymlogStatus> {
    h.as_ref().ok_or_else(|| fail(AsymlogStatus::NullPointer, "handle is null"))
}

fn from_constant(r: ConstantResult, digits: u32) -> AsymlogValue {
    AsymlogValue {
        exact: r.exact.as_ref().map(|q| q.to_string()),
        value: r.value,
        digits,
        residual: Some(r.residual_estimate),
    }
}

fn from_real(value: Real, digits: u32) -> AsymlogValue {
    AsymlogValue { value, exact: None, digits, residual: None }
}

fn to_c_string(s: String, out: *mut *mut c_char) -> Result<(), AsymlogStatus> {
    check_out(out)?;
    let c = CString::new(s).map_err(|_| fail(AsymlogStatus::InvalidString, "interior NUL in output"))?;
    // SAFETY: `out` checked non-null above
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message for the last failure on this thread, or null. Owned by the
/// library; valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn asymlog_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn asymlog_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn asymlog_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `zeta^{(p)}(a)` to `digits` digits.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn asymlog_zeta_derivative(
    p: u32,
    a: i64,
    digits: u32,
    out: *mut *mut AsymlogValue,
) -> AsymlogStatus {
    guard(|| put(out, from_constant(lib(zeta_derivative(p, a, digits))?, digits)))
}

/// Generalized Stieltjes constant `gamma_p`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn asymlog_stieltjes(p: u32, digits: u32, out: *mut *mut AsymlogValue) -> AsymlogStatus {
    guard(|| put(out, from_constant(lib(stieltjes(p, digits))?, digits)))
}

/// Glaisher-type constant of order `q`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn asymlog_glaisher(q: u32, digits: u32, out: *mut *mut AsymlogValue) -> AsymlogStatus {
    guard(|| put(out, from_constant(lib(glaisher(q, digits))?, digits)))
}

/// Constant `C_{p,q}` of the sum over `1/(n^q log^p n)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn asymlog_cpq(p: u32, q: u32, digits: u32, out: *mut *mut AsymlogValue) -> AsymlogStatus {
    guard(|| put(out, from_constant(lib(cpq(p, q, digits))?, digits)))
}

/// `Li_j(x)` for a decimal string `x`; with `reflection` non-zero,
/// `Li_j(1 - x)` through the reflection formula.
///
/// # Safety
/// `x` must be a NUL-terminated string; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn asymlog_polylog(
    j: u32,
    x: *const c_char,
    digits: u32,
    reflection: i32,
    out: *mut *mut AsymlogValue,
) -> AsymlogStatus {
    guard(|| {
        let x = lib(parse_real(read_str(x)?, bits_for(digits) + 16))?;
        let v = if reflection != 0 { li_reflection(j, &x, digits) } else { polylog(j, &x, digits) };
        put(out, from_real(lib(v)?, digits))
    })
}

/// Nielsen generalized polylogarithm `S_{k,p}(x)`.
///
/// # Safety
/// `x` must be a NUL-terminated string; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn asymlog_nielsen(
    k: u32,
    p: u32,
    x: *const c_char,
    digits: u32,
    out: *mut *mut AsymlogValue,
) -> AsymlogStatus {
    guard(|| {
        let x = lib(parse_real(read_str(x)?, bits_for(digits) + 16))?;
        put(out, from_real(lib(nielsen(k, p, &x, digits))?, digits))
    })
}

/// The meta-zeta sum over `(n log n)^{-s}` for `s > 1`.
///
/// # Safety
/// `s` must be a NUL-terminated string; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn asymlog_meta_zeta(s: *const c_char, digits: u32, out: *mut *mut AsymlogValue) -> AsymlogStatus {
    guard(|| {
        let s = lib(parse_real(read_str(s)?, bits_for(digits) + 16))?;
        put(out, from_real(lib(meta_zeta(&s, digits))?, digits))
    })
}

/// Nearest `f64` to the value.
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymlog_value_to_double(h: *const AsymlogValue, out: *mut f64) -> AsymlogStatus {
    guard(|| {
        let v = handle(h)?;
        check_out(out)?;
        *out = v.value.to_f64();
        Ok(())
    })
}

/// Decimal rendering: the exact fraction `a/b` when known, otherwise
/// scientific notation with `digits` significant digits (0 uses the
/// requested precision). Free with [`asymlog_string_free`].
///
/// # Safety
/// `h` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn asymlog_value_to_string(
    h: *const AsymlogValue,
    digits: u32,
    out: *mut *mut c_char,
) -> AsymlogStatus {
    guard(|| {
        let v = handle(h)?;
        let s = match &v.exact {
            Some(q) => q.clone(),
            None => format_real(&v.value, if digits == 0 { v.digits } else { digits }),
        };
        to_c_string(s, out)
    })
}

/// Non-zero when the value is known as an exact rational.
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn asymlog_value_is_exact(h: *const AsymlogValue) -> i32 {
    h.as_ref().map_or(0, |v| v.exact.is_some() as i32)
}

/// Estimated absolute error of an extracted constant, or NaN when none
/// was recorded.
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn asymlog_value_residual(h: *const AsymlogValue) -> f64 {
    h.as_ref().and_then(|v| v.residual.as_ref()).map_or(f64::NAN, |r| r.to_f64())
}

/// Releases a value handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn asymlog_value_free(h: *mut AsymlogValue) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Fits `c_0 ..= c_max_i` to `digits` digits.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn asymlog_bootstrap(max_i: u32, digits: u32, out: *mut *mut AsymlogBootstrap) -> AsymlogStatus {
    guard(|| put(out, AsymlogBootstrap { table: lib(bootstrap_ci(max_i, digits))?, digits }))
}

/// Number of coefficients in the table (0 for null).
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn asymlog_bootstrap_len(h: *const AsymlogBootstrap) -> usize {
    h.as_ref().map_or(0, |b| b.table.c.len())
}

/// Copies `c_i` out as a new value handle.
///
/// # Safety
/// `h` must be a live handle; `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn asymlog_bootstrap_get(
    h: *const AsymlogBootstrap,
    i: usize,
    out: *mut *mut AsymlogValue,
) -> AsymlogStatus {
    guard(|| {
        let b = handle(h)?;
        let c = b
            .table
            .c
            .get(i)
            .ok_or_else(|| fail(AsymlogStatus::OutOfRange, format!("index {i} beyond c_{}", b.table.c.len() - 1)))?;
        put(out, from_real(c.clone(), b.digits))
    })
}

/// Releases a bootstrap handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn asymlog_bootstrap_free(h: *mut AsymlogBootstrap) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Runs an exact identity suite by name. Zero for `max_p`, `max_n` or `k`
/// selects the suite default. Returns [`AsymlogStatus::Verification`] when
/// any instance fails; the counts are written either way.
///
/// # Safety
/// `suite` must be a NUL-terminated string; the count pointers writable or
/// null.
#[no_mangle]
pub unsafe extern "C" fn asymlog_verify_suite(
    suite: *const c_char,
    max_p: u64,
    max_n: u64,
    k: u32,
    instances: *mut u64,
    failed: *mut u64,
) -> AsymlogStatus {
    guard(|| {
        let s: Suite = lib(read_str(suite)?.parse())?;
        let nz = |v: u64| (v != 0).then_some(v);
        let params = SuiteParams { max_p: nz(max_p), max_n: nz(max_n), k: (k != 0).then_some(k) };
        let checks = lib(run_suite(s, params))?;
        let bad = checks.iter().filter(|c| !c.holds).count() as u64;
        if !instances.is_null() {
            *instances = checks.len() as u64;
        }
        if !failed.is_null() {
            *failed = bad;
        }
        if bad > 0 {
            return Err(fail(AsymlogStatus::Verification, format!("{bad} instance(s) of {s} failed")));
        }
        Ok(())
    })
}
