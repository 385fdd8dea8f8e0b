//! C ABI over the `kratzer2d` library.
//!
//! Every fallible call returns a [`K2dStatus`] and writes its result through
//! an out-pointer. Bound states and density grids are opaque handles that the
//! caller releases with the matching `*_free` function. The message of the
//! most recent failure on the calling thread is available from
//! [`k2d_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kratzer2d::oracle::{default_grid, fd_eigenvalues};
use kratzer2d::wavefun::default_r_max;
use kratzer2d::{
    bound_state, density_grid, radial_value, specfun, total_density, BoundState, DensityGrid, Error, PhysicalConstants,
    PotentialSpec, QuantumNumbers,
};

/// `V = -2 D0 (r0/r - r0^2/(2 r^2))`; `strength` is `D0`.
pub const K2D_KRATZER: u32 = 0;
/// `V = D0 ((r - r0)/r)^2`; `strength` is `D0`.
pub const K2D_MODIFIED1: u32 = 1;
/// `V = -q (r0/r - g^2 r0^2/r^2)`; `strength` is `q`.
pub const K2D_MODIFIED2: u32 = 2;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K2dStatus {
    Ok = 0,
    InvalidParameter = 1,
    NoBoundStates = 2,
    NonConvergence = 3,
    GridTooCoarse = 4,
    BoxTooSmall = 5,
    NullPointer = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Potential and unit choice.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct K2dParams {
    /// One of `K2D_KRATZER`, `K2D_MODIFIED1`, `K2D_MODIFIED2`.
    pub kind: u32,
    pub strength: f64,
    pub r0: f64,
    /// Ignored unless `kind` is `K2D_MODIFIED2`.
    pub g: f64,
    pub hbar: f64,
    pub mu: f64,
}

/// Opaque bound state.
pub struct K2dBoundState(BoundState);

/// Opaque polar density grid.
pub struct K2dDensityGrid(DensityGrid);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn status_of(e: &Error) -> K2dStatus {
    match e {
        Error::InvalidParameter(_) => K2dStatus::InvalidParameter,
        Error::NoBoundStates(_) => K2dStatus::NoBoundStates,
        Error::NonConvergence(_) => K2dStatus::NonConvergence,
        Error::GridTooCoarse(_) => K2dStatus::GridTooCoarse,
        Error::BoxTooSmall(_) => K2dStatus::BoxTooSmall,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Buffer(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> K2dStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => K2dStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(&format!("null pointer: {what}"));
            K2dStatus::NullPointer
        }
        Ok(Err(Failure::Buffer(needed))) => {
            set_last_error(&format!("buffer too small: {needed} values required"));
            K2dStatus::BufferTooSmall
        }
        Err(_) => {
            set_last_error("internal panic");
            K2dStatus::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn in_ref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

fn to_spec(p: &K2dParams) -> Result<(PotentialSpec, PhysicalConstants), Error> {
    let spec = match p.kind {
        K2D_KRATZER => PotentialSpec::kratzer(p.strength, p.r0)?,
        K2D_MODIFIED1 => PotentialSpec::modified1(p.strength, p.r0)?,
        K2D_MODIFIED2 => PotentialSpec::modified2(p.strength, p.r0, p.g)?,
        other => return Err(Error::InvalidParameter(format!("unknown potential kind {other}"))),
    };
    Ok((spec, PhysicalConstants::new(p.hbar, p.mu)?))
}

/// Static description of a status code. Never null; unknown codes get a
/// generic message.
#[no_mangle]
pub extern "C" fn k2d_status_message(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"invalid parameter",
        2 => c"no bound states",
        3 => c"numerical procedure did not converge",
        4 => c"finite-difference grid too coarse",
        5 => c"finite-difference box too small",
        6 => c"null pointer argument",
        7 => c"output buffer too small",
        8 => c"internal panic",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Message of the last failed call on this thread, valid until the next
/// failing call on the same thread. Empty if nothing has failed.
#[no_mangle]
pub extern "C" fn k2d_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds the closed-form bound state `(n, m)`.
///
/// # Safety
/// `params` must point to a valid `K2dParams`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2d_bound_state_new(
    params: *const K2dParams,
    n: u32,
    m: i32,
    out: *mut *mut K2dBoundState,
) -> K2dStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let (spec, c) = to_spec(in_ref(params, "params")?)?;
        let state = bound_state(&spec, &c, QuantumNumbers::new(n, m))?;
        *out = Box::into_raw(Box::new(K2dBoundState(state)));
        Ok(())
    })
}

/// Releases a handle from `k2d_bound_state_new`. Null is ignored.
///
/// # Safety
/// `state` must be null or a live handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn k2d_bound_state_free(state: *mut K2dBoundState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2d_bound_state_energy(state: *const K2dBoundState, out: *mut f64) -> K2dStatus {
    guard(|| {
        *out_ref(out, "out")? = in_ref(state, "state")?.0.energy;
        Ok(())
    })
}

/// Natural log of the normalization constant `C`.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2d_bound_state_log_norm(state: *const K2dBoundState, out: *mut f64) -> K2dStatus {
    guard(|| {
        *out_ref(out, "out")? = in_ref(state, "state")?.0.log_norm;
        Ok(())
    })
}

/// Radial function `phi(r)`, normalized so that `int phi^2 r dr = 1`.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2d_bound_state_radial_value(state: *const K2dBoundState, r: f64, out: *mut f64) -> K2dStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let state = in_ref(state, "state")?;
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidParameter(format!("r must be finite and non-negative, got {r}")).into());
        }
        *out = radial_value(&state.0, r);
        Ok(())
    })
}

/// `|Psi(r, phi)|^2`.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2d_bound_state_density(
    state: *const K2dBoundState,
    r: f64,
    phi: f64,
    out: *mut f64,
) -> K2dStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let state = in_ref(state, "state")?;
        if !(r.is_finite() && r >= 0.0 && phi.is_finite()) {
            return Err(Error::InvalidParameter("r and phi must be finite with r >= 0".into()).into());
        }
        *out = total_density(&state.0, r, phi);
        Ok(())
    })
}

/// Samples `|Psi|^2` on `nr` radii in `[0, r_max]` and `nphi` angles in
/// `[0, 2 pi)`. A non-positive `r_max` selects a radius that holds all but a
/// negligible fraction of the probability.
///
/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2d_density_grid_new(
    state: *const K2dBoundState,
    r_max: f64,
    nr: usize,
    nphi: usize,
    out: *mut *mut K2dDensityGrid,
) -> K2dStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let state = in_ref(state, "state")?;
        let r_max = if r_max > 0.0 { r_max } else { default_r_max(&state.0) };
        let grid = density_grid(&state.0, r_max, nr, nphi)?;
        *out = Box::into_raw(Box::new(K2dDensityGrid(grid)));
        Ok(())
    })
}

/// # Safety
/// `grid` must be null or a live handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn k2d_density_grid_free(grid: *mut K2dDensityGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// # Safety
/// `grid` must be a live handle; `nr` and `nphi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2d_density_grid_shape(
    grid: *const K2dDensityGrid,
    nr: *mut usize,
    nphi: *mut usize,
) -> K2dStatus {
    guard(|| {
        let grid = in_ref(grid, "grid")?;
        *out_ref(nr, "nr")? = grid.0.r_values.len();
        *out_ref(nphi, "nphi")? = grid.0.phi_values.len();
        Ok(())
    })
}

/// Copies the grid into `r_out[nr]`, `phi_out[nphi]` and row-major
/// `density_out[nr * nphi]`. Any of the three may be null to skip it.
///
/// # Safety
/// Non-null buffers must hold at least `len` values as stated.
#[no_mangle]
pub unsafe extern "C" fn k2d_density_grid_copy(
    grid: *const K2dDensityGrid,
    r_out: *mut f64,
    r_len: usize,
    phi_out: *mut f64,
    phi_len: usize,
    density_out: *mut f64,
    density_len: usize,
) -> K2dStatus {
    guard(|| {
        let g = &in_ref(grid, "grid")?.0;
        let (nr, nphi) = (g.r_values.len(), g.phi_values.len());
        let need = [
            (r_out.is_null(), r_len, nr),
            (phi_out.is_null(), phi_len, nphi),
            (density_out.is_null(), density_len, nr * nphi),
        ];
        if let Some(&(_, _, n)) = need.iter().find(|(null, len, n)| !null && len < n) {
            return Err(Failure::Buffer(n));
        }
        if !r_out.is_null() {
            ptr::copy_nonoverlapping(g.r_values.as_ptr(), r_out, nr);
        }
        if !phi_out.is_null() {
            ptr::copy_nonoverlapping(g.phi_values.as_ptr(), phi_out, nphi);
        }
        if !density_out.is_null() {
            for (i, row) in g.density.iter().enumerate() {
                ptr::copy_nonoverlapping(row.as_ptr(), density_out.add(i * nphi), nphi);
            }
        }
        Ok(())
    })
}

/// Closed-form energy of `(n, m)` without creating a handle.
///
/// # Safety
/// `params` must point to a valid `K2dParams`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2d_energy(params: *const K2dParams, n: u32, m: i32, out: *mut f64) -> K2dStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let (spec, c) = to_spec(in_ref(params, "params")?)?;
        *out = bound_state(&spec, &c, QuantumNumbers::new(n, m))?.energy;
        Ok(())
    })
}

/// Lowest `count` finite-difference eigenvalues at angular number `m`,
/// Richardson-extrapolated on an automatically chosen grid.
///
/// # Safety
/// `params` must point to a valid `K2dParams`; `out` must hold `out_len`
/// values.
#[no_mangle]
pub unsafe extern "C" fn k2d_fd_eigenvalues(
    params: *const K2dParams,
    m: i32,
    count: usize,
    out: *mut f64,
    out_len: usize,
) -> K2dStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let (spec, c) = to_spec(in_ref(params, "params")?)?;
        if out_len < count {
            return Err(Failure::Buffer(count));
        }
        let grid = default_grid(&spec, &c, m, count)?;
        let res = fd_eigenvalues(&spec, &c, m, count, grid)?;
        ptr::copy_nonoverlapping(res.refined_eigenvalues.as_ptr(), out, count);
        Ok(())
    })
}

/// Generalized Laguerre polynomial `L_n^a(x)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2d_laguerre(n: u32, a: f64, x: f64, out: *mut f64) -> K2dStatus {
    guard(|| {
        *out_ref(out, "out")? = specfun::laguerre(n, a, x)?;
        Ok(())
    })
}

/// `ln Gamma(x)` for `x > 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2d_log_gamma(x: f64, out: *mut f64) -> K2dStatus {
    guard(|| {
        *out_ref(out, "out")? = specfun::log_gamma(x)?;
        Ok(())
    })
}

/// Confluent hypergeometric `1F1(a; b; x)` for `x >= 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2d_kummer_1f1(a: f64, b: f64, x: f64, out: *mut f64) -> K2dStatus {
    guard(|| {
        *out_ref(out, "out")? = specfun::kummer_1f1(a, b, x)?;
        Ok(())
    })
}
