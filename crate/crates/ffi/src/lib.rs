//! C interface to the condensate and vacuum-energy solvers.
//!
//! Every entry point returns a [`GpStatus`]; results travel through out
//! pointers and heap state lives behind opaque handles with matching `_free`
//! functions. A failing call stores a message retrievable (per thread) with
//! [`gp_last_error`]. No call panics across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, c_double, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gpcas::condensate::{
    condensate_energy, critical_kappa, hole_threshold, robin_thresholds, solve_delta, solve_hole,
    solve_robin, CondensateSolution,
};
use gpcas::forces::{total_force, Background};
use gpcas::meanfield::{bound_state, meanfield_energy, BoundStateSolution};
use gpcas::models::{ModelConfig, PhysicalParams};
use gpcas::spectrum::{
    vacuum_energy_renormalized, vacuum_energy_subcritical, FluctuationPotential,
};
use gpcas::Error;

/// Outcome of a call. Anything but `Ok` leaves a description for
/// `gp_last_error`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument lies outside the range where the operation is defined.
    InvalidArgument = 2,
    /// The coupling sits below the threshold where the unstable mode — and
    /// with it the condensate — first appears.
    NoCriticalMode = 3,
    /// No admissible elliptic modulus exists for this interval length.
    KGap = 4,
    /// An evaluation point fell on a pole of an elliptic quotient.
    PoleProximity = 5,
    /// The fluctuation spectrum still carries an imaginary frequency, so the
    /// vacuum energy does not exist.
    UnstableSpectrum = 6,
    /// Any other failure, including an internal one.
    Failure = 7,
}

/// A model choice together with the field's mass and self-coupling.
pub struct GpModel {
    config: ModelConfig,
    params: PhysicalParams,
}

/// Solution of the linear eigenvalue problem for the unstable mode.
pub struct GpBoundState(BoundStateSolution);

/// Exact condensate profile.
pub struct GpCondensate(CondensateSolution);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let owned;
    let clean: &str = if msg.contains('\0') {
        owned = msg.replace('\0', " ");
        &owned
    } else {
        msg
    };
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap_or_default());
}

fn failed(e: Error) -> GpStatus {
    let status = match &e {
        Error::Domain(_) | Error::Config(_) | Error::Io(_) => GpStatus::InvalidArgument,
        Error::NoCriticalMode(_) | Error::CriticalWithoutCondensate(_) => GpStatus::NoCriticalMode,
        Error::KGap(_) => GpStatus::KGap,
        Error::PoleProximity { .. } | Error::Singularity(_) => GpStatus::PoleProximity,
        Error::UnstableSpectrum { .. } => GpStatus::UnstableSpectrum,
        _ => GpStatus::Failure,
    };
    set_error(&e.to_string());
    status
}

fn null_arg(name: &str) -> GpStatus {
    set_error(&format!("null pointer passed for {name}"));
    GpStatus::NullPointer
}

fn shielded(f: impl FnOnce() -> GpStatus) -> GpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic reached the interface boundary");
            GpStatus::Failure
        }
    }
}

fn background_of(code: c_int) -> Result<Background, GpStatus> {
    match code {
        0 => Ok(Background::Exact),
        1 => Ok(Background::Approx),
        other => {
            set_error(&format!(
                "background must be 0 (exact condensate) or 1 (bound-state approximation), got {other}"
            ));
            Err(GpStatus::InvalidArgument)
        }
    }
}

unsafe fn new_model(
    m: c_double,
    lambda: c_double,
    config: ModelConfig,
    out: *mut *mut GpModel,
) -> GpStatus {
    if out.is_null() {
        return null_arg("out");
    }
    shielded(|| {
        let params = match PhysicalParams::new(m, lambda) {
            Ok(p) => p,
            Err(e) => return failed(e),
        };
        if let Err(e) = config.validate() {
            return failed(e);
        }
        unsafe { *out = Box::into_raw(Box::new(GpModel { config, params })) };
        GpStatus::Ok
    })
}

/// Creates an attractive delta potential -2κ·δ(x) on the whole line.
#[no_mangle]
pub unsafe extern "C" fn gp_model_delta(
    m: c_double,
    lambda: c_double,
    kappa: c_double,
    out: *mut *mut GpModel,
) -> GpStatus {
    new_model(m, lambda, ModelConfig::Delta { kappa }, out)
}

/// Creates the interval [0, L] with φ'(0) = -κ·φ(0) and φ(L) = 0.
#[no_mangle]
pub unsafe extern "C" fn gp_model_robin(
    m: c_double,
    lambda: c_double,
    kappa: c_double,
    length: c_double,
    out: *mut *mut GpModel,
) -> GpStatus {
    new_model(m, lambda, ModelConfig::RobinDirichlet { kappa, length }, out)
}

/// Creates the square hole of depth U₀ on 0 < x < R with a Dirichlet wall at
/// x = 0 and a free half line beyond.
#[no_mangle]
pub unsafe extern "C" fn gp_model_hole(
    m: c_double,
    lambda: c_double,
    depth: c_double,
    width: c_double,
    out: *mut *mut GpModel,
) -> GpStatus {
    new_model(m, lambda, ModelConfig::PotentialHole { depth, width }, out)
}

/// Releases a model handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gp_model_free(model: *mut GpModel) {
    if !model.is_null() {
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Coupling κ_c above which the interval of length L carries an unstable
/// mode, m/tanh(mL).
#[no_mangle]
pub unsafe extern "C" fn gp_critical_kappa(
    m: c_double,
    length: c_double,
    out: *mut c_double,
) -> GpStatus {
    if out.is_null() {
        return null_arg("out");
    }
    if !(m.is_finite() && m > 0.0 && length.is_finite() && length > 0.0) {
        set_error(&format!(
            "critical coupling needs positive mass and length, got m = {m}, L = {length}"
        ));
        return GpStatus::InvalidArgument;
    }
    unsafe { *out = critical_kappa(length, m) };
    GpStatus::Ok
}

/// Interval lengths separating the condensate branches at fixed κ > m:
/// below `l0` no unstable mode, between `l1` and `l2` no admissible modulus.
/// `l1` and `l2` are set to NaN when κ < √2·m, where no gap exists.
#[no_mangle]
pub unsafe extern "C" fn gp_robin_thresholds(
    m: c_double,
    kappa: c_double,
    l0: *mut c_double,
    l1: *mut c_double,
    l2: *mut c_double,
) -> GpStatus {
    if l0.is_null() || l1.is_null() || l2.is_null() {
        return null_arg("l0/l1/l2");
    }
    if !(m.is_finite() && m > 0.0) {
        set_error(&format!("thresholds need a positive mass, got m = {m}"));
        return GpStatus::InvalidArgument;
    }
    shielded(|| match robin_thresholds(kappa, m) {
        Ok(th) => {
            unsafe {
                *l0 = th.l0;
                *l1 = th.l1.unwrap_or(f64::NAN);
                *l2 = th.l2.unwrap_or(f64::NAN);
            }
            GpStatus::Ok
        }
        Err(e) => failed(e),
    })
}

/// Hole depth at which the first unstable mode appears for width R.
#[no_mangle]
pub unsafe extern "C" fn gp_hole_threshold(
    m: c_double,
    width: c_double,
    out: *mut c_double,
) -> GpStatus {
    if out.is_null() {
        return null_arg("out");
    }
    shielded(|| match hole_threshold(width, m) {
        Ok(u0c) => {
            unsafe { *out = u0c };
            GpStatus::Ok
        }
        Err(e) => failed(e),
    })
}

/// Solves the linear eigenvalue problem for the model's unstable mode.
#[no_mangle]
pub unsafe extern "C" fn gp_bound_state_solve(
    model: *const GpModel,
    out: *mut *mut GpBoundState,
) -> GpStatus {
    if model.is_null() {
        return null_arg("model");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let model = unsafe { &*model };
    shielded(|| match bound_state(model.config, model.params) {
        Ok(bs) => {
            unsafe { *out = Box::into_raw(Box::new(GpBoundState(bs))) };
            GpStatus::Ok
        }
        Err(e) => failed(e),
    })
}

unsafe fn bound_state_get(
    bs: *const GpBoundState,
    out: *mut c_double,
    get: impl Fn(&BoundStateSolution) -> f64,
) -> GpStatus {
    if bs.is_null() {
        return null_arg("bound state");
    }
    if out.is_null() {
        return null_arg("out");
    }
    unsafe { *out = get(&(*bs).0) };
    GpStatus::Ok
}

/// Binding strength ε of the unstable mode; its eigenvalue is -ε².
#[no_mangle]
pub unsafe extern "C" fn gp_bound_state_epsilon(
    bs: *const GpBoundState,
    out: *mut c_double,
) -> GpStatus {
    bound_state_get(bs, out, |b| b.epsilon)
}

/// Variational amplitude μ of the condensate approximation μ·φ_bs.
#[no_mangle]
pub unsafe extern "C" fn gp_bound_state_mu(
    bs: *const GpBoundState,
    out: *mut c_double,
) -> GpStatus {
    bound_state_get(bs, out, |b| b.mu)
}

/// Variational condensate energy E_bs, an upper bound on the exact one.
#[no_mangle]
pub unsafe extern "C" fn gp_bound_state_energy(
    bs: *const GpBoundState,
    out: *mut c_double,
) -> GpStatus {
    bound_state_get(bs, out, meanfield_energy)
}

/// The approximate condensate profile μ·φ_bs at a point of the model's
/// domain.
#[no_mangle]
pub unsafe extern "C" fn gp_bound_state_eval(
    bs: *const GpBoundState,
    x: c_double,
    out: *mut c_double,
) -> GpStatus {
    bound_state_get(bs, out, |b| b.mu * b.phi(x))
}

/// Releases a bound-state handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gp_bound_state_free(bs: *mut GpBoundState) {
    if !bs.is_null() {
        drop(unsafe { Box::from_raw(bs) });
    }
}

/// Solves the full nonlinear field equation for the model's condensate.
#[no_mangle]
pub unsafe extern "C" fn gp_condensate_solve(
    model: *const GpModel,
    out: *mut *mut GpCondensate,
) -> GpStatus {
    if model.is_null() {
        return null_arg("model");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let model = unsafe { &*model };
    shielded(|| {
        let solved = match model.config {
            ModelConfig::Delta { .. } => solve_delta(model.config, model.params),
            ModelConfig::RobinDirichlet { .. } => solve_robin(model.config, model.params),
            ModelConfig::PotentialHole { .. } => solve_hole(model.config, model.params),
        };
        match solved {
            Ok(sol) => {
                unsafe { *out = Box::into_raw(Box::new(GpCondensate(sol))) };
                GpStatus::Ok
            }
            Err(e) => failed(e),
        }
    })
}

/// Exact condensate energy.
#[no_mangle]
pub unsafe extern "C" fn gp_condensate_energy(
    cond: *const GpCondensate,
    out: *mut c_double,
) -> GpStatus {
    if cond.is_null() {
        return null_arg("condensate");
    }
    if out.is_null() {
        return null_arg("out");
    }
    shielded(|| {
        unsafe { *out = condensate_energy(&(*cond).0) };
        GpStatus::Ok
    })
}

/// Elliptic modulus k of the profile, or NaN for the delta model whose
/// profile is the degenerate k = 1 shape.
#[no_mangle]
pub unsafe extern "C" fn gp_condensate_modulus(
    cond: *const GpCondensate,
    out: *mut c_double,
) -> GpStatus {
    if cond.is_null() {
        return null_arg("condensate");
    }
    if out.is_null() {
        return null_arg("out");
    }
    unsafe { *out = (*cond).0.modulus().unwrap_or(f64::NAN) };
    GpStatus::Ok
}

/// Condensate profile φ₀ at a point of the model's domain.
#[no_mangle]
pub unsafe extern "C" fn gp_condensate_eval(
    cond: *const GpCondensate,
    x: c_double,
    out: *mut c_double,
) -> GpStatus {
    if cond.is_null() {
        return null_arg("condensate");
    }
    if out.is_null() {
        return null_arg("out");
    }
    shielded(|| {
        unsafe { *out = (*cond).0.phi(x) };
        GpStatus::Ok
    })
}

/// Releases a condensate handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gp_condensate_free(cond: *mut GpCondensate) {
    if !cond.is_null() {
        drop(unsafe { Box::from_raw(cond) });
    }
}

/// Renormalized vacuum energy of the fluctuations for the interval model.
/// Below threshold (κ < m) the closed subcritical form is used and
/// `background` is ignored; above the critical coupling the spectrum is
/// integrated over the condensate background selected by `background`
/// (0 = exact profile, 1 = bound-state approximation).
#[no_mangle]
pub unsafe extern "C" fn gp_vacuum_energy(
    model: *const GpModel,
    background: c_int,
    out: *mut c_double,
) -> GpStatus {
    if model.is_null() {
        return null_arg("model");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let model = unsafe { &*model };
    shielded(|| {
        let (kappa, length) = match model.config {
            ModelConfig::RobinDirichlet { kappa, length } => (kappa, length),
            other => {
                return failed(Error::Domain(format!(
                    "vacuum energy is implemented for the interval model, got {other:?}"
                )))
            }
        };
        if kappa < model.params.m {
            return match vacuum_energy_subcritical(model.params, kappa, length) {
                Ok(report) => {
                    unsafe { *out = report.e0_ren };
                    GpStatus::Ok
                }
                Err(e) => failed(e),
            };
        }
        let bg = match background_of(background) {
            Ok(bg) => bg,
            Err(status) => return status,
        };
        let potential = match bg {
            Background::Exact => solve_robin(model.config, model.params)
                .and_then(FluctuationPotential::from_condensate),
            Background::Approx => bound_state(model.config, model.params)
                .and_then(FluctuationPotential::from_bound_state),
        };
        let potential = match potential {
            Ok(v) => v,
            Err(e) => return failed(e),
        };
        match vacuum_energy_renormalized(&potential, model.params, kappa, length) {
            Ok(report) => {
                unsafe { *out = report.e0_ren };
                GpStatus::Ok
            }
            Err(e) => failed(e),
        }
    })
}

/// Total force on the movable wall of the interval model: the condensate
/// part plus the fluctuation part over the selected background
/// (0 = exact profile, 1 = bound-state approximation). Positive values push
/// the wall outward.
#[no_mangle]
pub unsafe extern "C" fn gp_total_force(
    model: *const GpModel,
    background: c_int,
    out: *mut c_double,
) -> GpStatus {
    if model.is_null() {
        return null_arg("model");
    }
    if out.is_null() {
        return null_arg("out");
    }
    let model = unsafe { &*model };
    shielded(|| {
        let bg = match background_of(background) {
            Ok(bg) => bg,
            Err(status) => return status,
        };
        match total_force(model.config, model.params, bg) {
            Ok(report) => {
                unsafe { *out = report.f_total };
                GpStatus::Ok
            }
            Err(e) => failed(e),
        }
    })
}

/// Copies the description of the current thread's most recent failure into
/// `buf` (always NUL-terminated when `len` > 0) and returns the full length
/// of the message including the NUL, so a call with a null buffer sizes a
/// retry.
#[no_mangle]
pub unsafe extern "C" fn gp_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n - 1) = 0;
            }
        }
        bytes.len()
    })
}
