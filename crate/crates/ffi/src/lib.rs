//! C ABI over `descm`.
//!
//! Every function returns a [`DescmStatus`]; on anything but `DESCM_STATUS_OK`
//! a message is available from [`descm_last_error`] on the calling thread.
//! Potentials are opaque handles created by `descm_potential_from_*` and
//! released with [`descm_potential_free`]. Panics never cross the boundary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use descm::{
    converge, lambert_w0, optimal_h, parse_spec, solve, trace_minimized_h, trace_of_k, ConvergenceOptions, DescmError,
    DescmProblem, EvenPolynomialPotential, MeshStrategy,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    InvalidPotential = 4,
    Overflow = 5,
    NoInteriorMinimum = 6,
    NotConverged = 7,
    NumericalFailure = 8,
    Panic = 9,
}

/// Values accepted by the `mesh` argument of [`descm_solve`] and [`descm_converge`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescmMeshKind {
    Optimal = 0,
    TraceMinimized = 1,
    Fixed = 2,
}

/// Opaque potential handle.
pub struct DescmPotential {
    inner: EvenPolynomialPotential,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(DescmStatus, String);

impl From<DescmError> for Fail {
    fn from(e: DescmError) -> Self {
        let status = match e {
            DescmError::InvalidArgument(_) | DescmError::LevelOutOfRange { .. } => DescmStatus::InvalidArgument,
            DescmError::Parse { .. } => DescmStatus::ParseError,
            DescmError::InvalidPotential(_) => DescmStatus::InvalidPotential,
            DescmError::Overflow { .. } => DescmStatus::Overflow,
            DescmError::NoInteriorMinimum { .. } => DescmStatus::NoInteriorMinimum,
            _ => DescmStatus::NumericalFailure,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(DescmStatus::NullPointer, format!("{what} is null"))
}

fn invalid(message: impl Into<String>) -> Fail {
    Fail(DescmStatus::InvalidArgument, message.into())
}

/// Runs `f`, converting errors and panics to a status code.
fn guard(f: impl FnOnce() -> Result<DescmStatus, Fail>) -> DescmStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {message}"));
            DescmStatus::Panic
        }
    }
}

unsafe fn potential_ref<'a>(p: *const DescmPotential) -> Result<&'a EvenPolynomialPotential, Fail> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("potential"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn mesh_strategy(mesh: i32, fixed_h: f64) -> Result<MeshStrategy, Fail> {
    let strategy = match mesh {
        m if m == DescmMeshKind::Optimal as i32 => MeshStrategy::optimal(),
        m if m == DescmMeshKind::TraceMinimized as i32 => MeshStrategy::trace_minimized(),
        m if m == DescmMeshKind::Fixed as i32 => MeshStrategy::fixed(fixed_h),
        other => return Err(invalid(format!("unknown mesh kind {other}"))),
    };
    strategy.validate()?;
    Ok(strategy)
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next `descm_*` call on the same thread.
#[no_mangle]
pub extern "C" fn descm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn descm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a spec such as `poly:1,1` or `cheb:10;shift=-1`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn descm_potential_from_spec(spec: *const c_char, out: *mut *mut DescmPotential) -> DescmStatus {
    guard(|| {
        if spec.is_null() {
            return Err(null("spec"));
        }
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let text = CStr::from_ptr(spec)
            .to_str()
            .map_err(|_| Fail(DescmStatus::ParseError, "spec is not valid UTF-8".into()))?;
        let inner = parse_spec(text)?;
        out.write(Box::into_raw(Box::new(DescmPotential { inner })));
        Ok(DescmStatus::Ok)
    })
}

/// `V(x) = c0 + sum_i coefficients[i-1] x^(2i)` with `len >= 1` and a
/// positive last coefficient.
///
/// # Safety
/// `coefficients` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn descm_potential_from_coefficients(
    c0: f64,
    coefficients: *const f64,
    len: usize,
    out: *mut *mut DescmPotential,
) -> DescmStatus {
    guard(|| {
        if coefficients.is_null() {
            return Err(null("coefficients"));
        }
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let coeffs = std::slice::from_raw_parts(coefficients, len).to_vec();
        let inner = EvenPolynomialPotential::with_constant(c0, coeffs)?;
        out.write(Box::into_raw(Box::new(DescmPotential { inner })));
        Ok(DescmStatus::Ok)
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `p` must come from `descm_potential_from_*` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn descm_potential_free(p: *mut DescmPotential) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of polynomial coefficients `m` (the degree is `2m`).
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn descm_potential_degree(p: *const DescmPotential, out: *mut usize) -> DescmStatus {
    guard(|| {
        let m = potential_ref(p)?.degree_parameter();
        write_out(out, m)?;
        Ok(DescmStatus::Ok)
    })
}

/// `V(x)`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn descm_potential_evaluate(p: *const DescmPotential, x: f64, out: *mut f64) -> DescmStatus {
    guard(|| {
        let v = potential_ref(p)?.evaluate(x);
        write_out(out, v)?;
        Ok(DescmStatus::Ok)
    })
}

/// Principal branch `W0(z)` for `z >= 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn descm_lambert_w0(z: f64, out: *mut f64) -> DescmStatus {
    guard(|| {
        let w = lambert_w0(z)?;
        write_out(out, w)?;
        Ok(DescmStatus::Ok)
    })
}

/// Closed-form mesh size for truncation `n`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn descm_optimal_h(p: *const DescmPotential, n: usize, out: *mut f64) -> DescmStatus {
    guard(|| {
        let h = optimal_h(potential_ref(p)?, n)?;
        write_out(out, h)?;
        Ok(DescmStatus::Ok)
    })
}

/// Trace of the collocation matrix at `(n, h)`; may be `+inf`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn descm_trace(p: *const DescmPotential, n: usize, h: f64, out: *mut f64) -> DescmStatus {
    guard(|| {
        let t = trace_of_k(potential_ref(p)?, n, h)?;
        write_out(out, t)?;
        Ok(DescmStatus::Ok)
    })
}

/// Mesh size minimising the trace inside `[low, high]`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn descm_trace_minimized_h(
    p: *const DescmPotential,
    n: usize,
    low: f64,
    high: f64,
    out: *mut f64,
) -> DescmStatus {
    guard(|| {
        let strategy = MeshStrategy::trace_minimized().with_bracket(low, high);
        let h = trace_minimized_h(potential_ref(p)?, n, &strategy)?;
        write_out(out, h)?;
        Ok(DescmStatus::Ok)
    })
}

/// Lowest `levels` eigenvalues at truncation `n`, ascending, written to
/// `values`. `mesh` is a [`DescmMeshKind`]; `fixed_h` is read only for
/// `DESCM_MESH_KIND_FIXED`. `h_used` may be NULL.
///
/// # Safety
/// `p` must be a live handle; `values` must hold `levels` doubles.
#[no_mangle]
pub unsafe extern "C" fn descm_solve(
    p: *const DescmPotential,
    n: usize,
    mesh: i32,
    fixed_h: f64,
    values: *mut f64,
    levels: usize,
    h_used: *mut f64,
) -> DescmStatus {
    guard(|| {
        let potential = potential_ref(p)?;
        if values.is_null() {
            return Err(null("values"));
        }
        if n == 0 {
            return Err(invalid("N must be at least 1"));
        }
        if levels == 0 || levels > 2 * n + 1 {
            return Err(invalid(format!("levels must be between 1 and {}", 2 * n + 1)));
        }
        let problem = DescmProblem::new(potential.clone())
            .with_strategy(mesh_strategy(mesh, fixed_h)?)
            .with_levels(levels);
        let result = solve(&problem, n)?;
        std::slice::from_raw_parts_mut(values, levels).copy_from_slice(result.eigenvalues());
        if !h_used.is_null() {
            h_used.write(result.h_used);
        }
        Ok(DescmStatus::Ok)
    })
}

/// Increases N from 2 until successive values of `level` differ by less
/// than `tolerance`, or `n_max` is reached. The last energy, N and
/// difference are written either way; the status is
/// `DESCM_STATUS_NOT_CONVERGED` in the second case. `out_n` and `out_eps`
/// may be NULL.
///
/// # Safety
/// `p` must be a live handle; `out_energy` must be writable.
#[no_mangle]
pub unsafe extern "C" fn descm_converge(
    p: *const DescmPotential,
    level: usize,
    tolerance: f64,
    n_max: usize,
    mesh: i32,
    fixed_h: f64,
    out_energy: *mut f64,
    out_n: *mut usize,
    out_eps: *mut f64,
) -> DescmStatus {
    guard(|| {
        let potential = potential_ref(p)?;
        if out_energy.is_null() {
            return Err(null("out_energy"));
        }
        let options = ConvergenceOptions {
            tolerance,
            n_max,
            ..Default::default()
        };
        if !(tolerance > 0.0) {
            return Err(invalid("tolerance must be positive"));
        }
        if n_max < options.n_start {
            return Err(invalid(format!("n_max must be at least {}", options.n_start)));
        }
        let problem = DescmProblem::new(potential.clone()).with_strategy(mesh_strategy(mesh, fixed_h)?);
        let trace = converge(&problem, level, &options)?;
        let last = trace.last();
        out_energy.write(last.value);
        if !out_n.is_null() {
            out_n.write(last.n);
        }
        if !out_eps.is_null() {
            out_eps.write(last.eps.unwrap_or(f64::NAN));
        }
        if trace.converged {
            Ok(DescmStatus::Ok)
        } else {
            Err(Fail(
                DescmStatus::NotConverged,
                format!("level {level} not converged to {tolerance:e} by N = {}", last.n),
            ))
        }
    })
}
