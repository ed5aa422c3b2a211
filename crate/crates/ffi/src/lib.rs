//! C ABI for `elab-core`.
//!
//! Every fallible function returns an [`ElabStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be read with [`elab_last_error`]. Euler paths are handed out as opaque
//! [`ElabEulerPath`] handles and must be released with
//! [`elab_euler_path_free`].

use std::cell::RefCell;
use std::ffi::CString;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, size_t};

use elab_core::odesolve::EulerPath;
use elab_core::{limits, loginv, powcore, series, slopes, Error, PosReal};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Overflow = 4,
    ToleranceNotMet = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ElabEnclosure {
    pub lo: f64,
    pub hi: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ElabSeriesState {
    pub partial_sum: f64,
    pub terms_used: u64,
    pub last_term: f64,
    pub tail_bound: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ElabComplex {
    pub re: f64,
    pub im: f64,
}

/// Opaque Euler path.
pub struct ElabEulerPath(EulerPath);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ElabStatus {
    match e {
        Error::Overflow { .. } | Error::Underflow { .. } => ElabStatus::Overflow,
        Error::ToleranceNotMet { .. } => ElabStatus::ToleranceNotMet,
        Error::DepthExceeded { .. }
        | Error::LevelOutOfRange { .. }
        | Error::IndexOutOfRange { .. }
        | Error::ArgumentOutOfRange(_) => ElabStatus::OutOfRange,
        _ => ElabStatus::InvalidArgument,
    }
}

/// Runs `f`, stores its value in `out` and records any failure.
fn call<T>(out: *mut T, f: impl FnOnce() -> elab_core::Result<T>) -> ElabStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return ElabStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: checked non-null; the caller guarantees it is writable.
            unsafe { out.write(v) };
            ElabStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            ElabStatus::Panic
        }
    }
}

/// Message for the last failure on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn elab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn elab_status_str(status: ElabStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        ElabStatus::Ok => b"ok\0",
        ElabStatus::NullPointer => b"null pointer\0",
        ElabStatus::InvalidArgument => b"invalid argument\0",
        ElabStatus::OutOfRange => b"out of range\0",
        ElabStatus::Overflow => b"overflow\0",
        ElabStatus::ToleranceNotMet => b"tolerance not met\0",
        ElabStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// `(1 + 1/n)^n`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_compound(n: u64, out: *mut f64) -> ElabStatus {
    call(out, || limits::compound(n))
}

/// `(1 + x/n)^n`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_compound_x(x: f64, n: u64, out: *mut f64) -> ElabStatus {
    call(out, || limits::compound_x(x, n))
}

/// `(a^h − 1)/h`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_diff_quotient(a: f64, h: f64, out: *mut f64) -> ElabStatus {
    call(out, || slopes::diff_quotient(PosReal::new(a)?, h))
}

/// `a^(1/DQ(a, h))`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_estimate_e_by_stretch(a: f64, h: f64, out: *mut f64) -> ElabStatus {
    call(out, || slopes::estimate_e_by_stretch(PosReal::new(a)?, h))
}

/// Certified enclosure of `a^x` at dyadic depth `depth`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_exp_base(a: f64, x: f64, depth: u32, out: *mut ElabEnclosure) -> ElabStatus {
    call(out, || {
        let e = powcore::exp_base(PosReal::new(a)?, x, depth)?;
        Ok(ElabEnclosure { lo: e.lo(), hi: e.hi() })
    })
}

/// `y^(1/n)` by bisection.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_nth_root(y: f64, n: u32, tol: f64, out: *mut f64) -> ElabStatus {
    call(out, || powcore::nth_root(PosReal::new(y)?, n, tol).map(PosReal::get))
}

/// `Σ_{k ≤ m} 1/k!`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_factorial_partial_sum(m: u64, out: *mut f64) -> ElabStatus {
    call(out, || series::factorial_partial_sum(m))
}

/// Upper bound on `Σ_{k > m} 1/k!`.
#[no_mangle]
pub extern "C" fn elab_tail_bound(m: u64) -> f64 {
    series::tail_bound(m)
}

/// Bound on `|e − (1 + 1/n)^n|` from the first `m` binomial terms.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_series_error_certificate(n: u64, m: u64, out: *mut f64) -> ElabStatus {
    call(out, || series::series_error_certificate(n, m))
}

/// `e^x` from its Taylor series.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_taylor_exp(x: f64, tol: f64, out: *mut ElabSeriesState) -> ElabStatus {
    call(out, || {
        let s = series::taylor_exp(x, tol)?;
        Ok(ElabSeriesState {
            partial_sum: s.partial_sum,
            terms_used: s.terms_used,
            last_term: s.last_term,
            tail_bound: s.tail_bound,
        })
    })
}

/// `e^{iθ}`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_complex_exp(theta: f64, tol: f64, out: *mut ElabComplex) -> ElabStatus {
    call(out, || series::complex_exp(theta, tol).map(|z| ElabComplex { re: z.re, im: z.im }))
}

/// `ln y` by bisection on the series exponential.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_nat_log(y: f64, tol: f64, out: *mut f64) -> ElabStatus {
    call(out, || loginv::nat_log(PosReal::new(y)?, tol).map(|l| l.value))
}

/// `∫_1^x dt/t` by the midpoint rule.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_quadrature_log(x: f64, panels: u64, out: *mut f64) -> ElabStatus {
    call(out, || loginv::quadrature_log(PosReal::new(x)?, panels))
}

/// Napier's logarithm of a sine scaled to the whole sine 10,000,000.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_napier_log(scaled_sine: u64, out: *mut f64) -> ElabStatus {
    call(out, || loginv::napier_log(scaled_sine).map(|e| e.napier_log))
}

/// `log10 x`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_briggs_log10(x: f64, out: *mut f64) -> ElabStatus {
    call(out, || loginv::briggs_log10(PosReal::new(x)?))
}

/// Builds the Euler path for `y' = y` on `[0, x]` with `n` steps.
///
/// # Safety
/// `out` must be null or valid for writes. The handle written there must be
/// released with [`elab_euler_path_free`].
#[no_mangle]
pub unsafe extern "C" fn elab_euler_path_new(x: f64, n: u64, out: *mut *mut ElabEulerPath) -> ElabStatus {
    call(out, || {
        let p = elab_core::odesolve::euler_path(x, n)?;
        Ok(Box::into_raw(Box::new(ElabEulerPath(p))))
    })
}

/// Number of points, `n + 1`; 0 for a null handle.
///
/// # Safety
/// `path` must be null or a live handle from [`elab_euler_path_new`].
#[no_mangle]
pub unsafe extern "C" fn elab_euler_path_len(path: *const ElabEulerPath) -> size_t {
    // SAFETY: caller guarantees the handle is live.
    unsafe { path.as_ref() }.map_or(0, |p| p.0.points.len())
}

/// Point `index` of the path.
///
/// # Safety
/// `path` must be null or a live handle; `x` and `y` must be null or valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn elab_euler_path_point(
    path: *const ElabEulerPath,
    index: size_t,
    x: *mut f64,
    y: *mut f64,
) -> ElabStatus {
    // SAFETY: caller guarantees the handle is live.
    let Some(p) = (unsafe { path.as_ref() }) else {
        set_error("path handle is null");
        return ElabStatus::NullPointer;
    };
    if x.is_null() || y.is_null() {
        set_error("output pointer is null");
        return ElabStatus::NullPointer;
    }
    match p.0.points.get(index) {
        Some(&(px, py)) => {
            // SAFETY: both checked non-null above.
            unsafe {
                x.write(px);
                y.write(py);
            }
            ElabStatus::Ok
        }
        None => {
            set_error(&format!("index {index} outside 0..{}", p.0.points.len()));
            ElabStatus::OutOfRange
        }
    }
}

/// Releases a path; null is ignored.
///
/// # Safety
/// `path` must be null or a handle from [`elab_euler_path_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn elab_euler_path_free(path: *mut ElabEulerPath) {
    if !path.is_null() {
        // SAFETY: caller guarantees single ownership of a live handle.
        drop(unsafe { Box::from_raw(path) });
    }
}
