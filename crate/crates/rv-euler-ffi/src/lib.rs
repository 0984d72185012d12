//! C ABI for the quaternion translational-dynamics library.
//!
//! The surface mirrors the core crate's value types with `repr(C)`
//! structs, reports failures through [`RvStatus`] codes plus a
//! thread-local message, and hands trajectories back as opaque handles
//! with accessor and destructor functions.  The matching header,
//! `include/rv_euler.h`, is generated by the build script and committed
//! alongside the sources.
//!
//! Conventions:
//!
//! * every function is total: invalid input, including null pointers,
//!   comes back as a status code, never a crash (an internal bug aborts
//!   rather than unwinding across the boundary);
//! * all outputs are written through caller-provided pointers only when
//!   the returned status is [`RvStatus::Ok`];
//! * angles are radians, lengths kilometers, times seconds;
//! * trajectory handles own their memory and must be released with
//!   [`rv_trajectory_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};

use rv_euler::error::Error;
use rv_euler::euler_param_core::{EulerParams, Mat3, Vec3};
use rv_euler::propagation::{rk4_propagate, Trajectory};
use rv_euler::rv_euler_dynamics::{
    state_derivative, two_body_force_provider, MassProperties, ObservationFrameSpec, RvEulerRates,
    RvEulerState,
};
use rv_euler::spherical_dynamics::SphericalState;
use rv_euler::state_conversion::{
    cartesian_from_rv_euler, cartesian_from_spherical, rv_euler_from_cartesian,
    spherical_from_cartesian, CartesianState, InitPolicy,
};

// ── Status reporting ────────────────────────────────────────────────────────

/// Result of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RvStatus {
    /// Success; outputs are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Input violates a structural precondition (non-unit quaternion,
    /// bad step count, ...).
    InvalidInput = 2,
    /// The state lies outside the mathematical domain of the requested
    /// operation (zero speed, singular geometry reached during
    /// propagation, ...).
    DomainError = 3,
    /// A direction needed to fix frame orientation is undefined for this
    /// geometry (position parallel to velocity under the default policy).
    DegenerateGeometry = 4,
    /// Index past the end of a trajectory.
    OutOfRange = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message).unwrap_or_else(|_| CString::new("invalid message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_from_error(e: &Error) -> RvStatus {
    match e {
        Error::InvalidInput(_) => RvStatus::InvalidInput,
        Error::Domain(_) => RvStatus::DomainError,
        Error::DegenerateGeometry(_) => RvStatus::DegenerateGeometry,
        Error::AtTime { source, .. } => status_from_error(source),
    }
}

fn fail(e: Error) -> RvStatus {
    let status = status_from_error(&e);
    set_last_error(e.to_string());
    status
}

/// Static name of a status code (never null).
#[no_mangle]
pub extern "C" fn rv_status_name(status: RvStatus) -> *const c_char {
    let name: &'static [u8] = match status {
        RvStatus::Ok => b"ok\0",
        RvStatus::NullPointer => b"null pointer\0",
        RvStatus::InvalidInput => b"invalid input\0",
        RvStatus::DomainError => b"domain error\0",
        RvStatus::DegenerateGeometry => b"degenerate geometry\0",
        RvStatus::OutOfRange => b"out of range\0",
    };
    name.as_ptr() as *const c_char
}

/// Copies the calling thread's last error message into `buf` as a
/// NUL-terminated string, truncating to `cap` bytes, and returns the
/// length of the full message (0 when no error is recorded).  Passing a
/// null buffer or zero capacity just queries the length.
///
/// # Safety
///
/// `buf` must point to at least `cap` writable bytes, or be null.
#[no_mangle]
pub unsafe extern "C" fn rv_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let borrow = slot.borrow();
        let Some(message) = borrow.as_ref() else {
            return 0;
        };
        let bytes = message.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}

// ── Value types ─────────────────────────────────────────────────────────────

/// Three-component vector (km or km/s by context).
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RvVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Unit quaternion as vector part plus scalar part.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RvQuat {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub eta: f64,
}

/// Quaternion time derivative.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RvQuatRates {
    pub e1_dot: f64,
    pub e2_dot: f64,
    pub e3_dot: f64,
    pub eta_dot: f64,
}

/// Ten-parameter translational state: radius, position-frame quaternion,
/// speed, velocity-frame quaternion.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RvState {
    pub r: f64,
    pub ep_a: RvQuat,
    pub v: f64,
    pub ep_b: RvQuat,
}

/// Time derivative of [`RvState`], with the frame angular velocities kept
/// as diagnostics (their first components are identically zero).
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RvRates {
    pub r_dot: f64,
    pub ep_a_rates: RvQuatRates,
    pub v_dot: f64,
    pub ep_b_rates: RvQuatRates,
    pub omega_a2: f64,
    pub omega_a3: f64,
    pub omega_b2: f64,
    pub omega_b3: f64,
}

/// Spherical flight state: radius, longitude, latitude, speed,
/// flight-path angle, azimuth (radians).
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RvSphericalState {
    pub r: f64,
    pub phi: f64,
    pub theta: f64,
    pub v: f64,
    pub gamma: f64,
    pub psi: f64,
}

/// Cartesian position and velocity.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RvCartesianState {
    pub r_vec: RvVec3,
    pub v_vec: RvVec3,
}

// ── Internal conversions ────────────────────────────────────────────────────

impl From<Vec3> for RvVec3 {
    fn from(v: Vec3) -> Self {
        RvVec3 { x: v.x, y: v.y, z: v.z }
    }
}

impl From<RvVec3> for Vec3 {
    fn from(v: RvVec3) -> Self {
        Vec3::new(v.x, v.y, v.z)
    }
}

impl From<EulerParams> for RvQuat {
    fn from(q: EulerParams) -> Self {
        RvQuat { e1: q.eps.x, e2: q.eps.y, e3: q.eps.z, eta: q.eta }
    }
}

impl From<RvQuat> for EulerParams {
    fn from(q: RvQuat) -> Self {
        EulerParams::new(q.e1, q.e2, q.e3, q.eta)
    }
}

impl From<RvEulerState> for RvState {
    fn from(s: RvEulerState) -> Self {
        RvState { r: s.r, ep_a: s.ep_a.into(), v: s.v, ep_b: s.ep_b.into() }
    }
}

impl From<RvState> for RvEulerState {
    fn from(s: RvState) -> Self {
        RvEulerState::new(s.r, s.ep_a.into(), s.v, s.ep_b.into())
    }
}

impl From<RvSphericalState> for SphericalState {
    fn from(s: RvSphericalState) -> Self {
        SphericalState::new(s.r, s.phi, s.theta, s.v, s.gamma, s.psi)
    }
}

impl From<SphericalState> for RvSphericalState {
    fn from(s: SphericalState) -> Self {
        RvSphericalState { r: s.r, phi: s.phi, theta: s.theta, v: s.v, gamma: s.gamma, psi: s.psi }
    }
}

impl From<RvCartesianState> for CartesianState {
    fn from(s: RvCartesianState) -> Self {
        CartesianState::new(s.r_vec.into(), s.v_vec.into())
    }
}

impl From<CartesianState> for RvCartesianState {
    fn from(s: CartesianState) -> Self {
        RvCartesianState { r_vec: s.r_vec.into(), v_vec: s.v_vec.into() }
    }
}

impl From<RvEulerRates> for RvRates {
    fn from(r: RvEulerRates) -> Self {
        RvRates {
            r_dot: r.r_dot,
            ep_a_rates: RvQuatRates {
                e1_dot: r.ep_a_rates.eps_dot.x,
                e2_dot: r.ep_a_rates.eps_dot.y,
                e3_dot: r.ep_a_rates.eps_dot.z,
                eta_dot: r.ep_a_rates.eta_dot,
            },
            v_dot: r.v_dot,
            ep_b_rates: RvQuatRates {
                e1_dot: r.ep_b_rates.eps_dot.x,
                e2_dot: r.ep_b_rates.eps_dot.y,
                e3_dot: r.ep_b_rates.eps_dot.z,
                eta_dot: r.ep_b_rates.eta_dot,
            },
            omega_a2: r.omega_a2,
            omega_a3: r.omega_a3,
            omega_b2: r.omega_b2,
            omega_b3: r.omega_b3,
        }
    }
}

/// Reads a possibly-null input pointer.
///
/// # Safety
///
/// `ptr` must be null or valid for reads of `T`.
unsafe fn read_in<T: Copy>(ptr: *const T) -> Option<T> {
    if ptr.is_null() {
        None
    } else {
        Some(unsafe { *ptr })
    }
}

macro_rules! require {
    ($opt:expr) => {
        match $opt {
            Some(v) => v,
            None => {
                set_last_error("null pointer argument".to_string());
                return RvStatus::NullPointer;
            }
        }
    };
}

macro_rules! try_ffi {
    ($result:expr) => {
        match $result {
            Ok(v) => v,
            Err(e) => return fail(e),
        }
    };
}

// ── State construction and conversion ───────────────────────────────────────

/// Builds the ten-parameter state from Cartesian position and velocity
/// using the default (angular-momentum-aligned) frame policy.
///
/// # Safety
///
/// `cart` must be valid for reads and `out` for writes, or null (null is
/// reported as [`RvStatus::NullPointer`]).
#[no_mangle]
pub unsafe extern "C" fn rv_state_from_cartesian(
    cart: *const RvCartesianState,
    out: *mut RvState,
) -> RvStatus {
    clear_last_error();
    let cart = require!(unsafe { read_in(cart) });
    if out.is_null() {
        return require!(None::<RvStatus>);
    }
    let state = try_ffi!(rv_euler_from_cartesian(&cart.into(), &InitPolicy::HAligned));
    unsafe { *out = state.into() };
    RvStatus::Ok
}

/// Like [`rv_state_from_cartesian`] but with a caller-supplied position
/// frame: `seed` is a row-major 3x3 rotation whose first row must be the
/// unit position direction.
///
/// # Safety
///
/// `cart` and `out` as in [`rv_state_from_cartesian`]; `seed` must be
/// null or point to 9 readable doubles.
#[no_mangle]
pub unsafe extern "C" fn rv_state_from_cartesian_seeded(
    cart: *const RvCartesianState,
    seed: *const f64,
    out: *mut RvState,
) -> RvStatus {
    clear_last_error();
    let cart = require!(unsafe { read_in(cart) });
    if seed.is_null() || out.is_null() {
        return require!(None::<RvStatus>);
    }
    let m = unsafe { std::slice::from_raw_parts(seed, 9) };
    let seed = Mat3::from_rows(
        Vec3::new(m[0], m[1], m[2]),
        Vec3::new(m[3], m[4], m[5]),
        Vec3::new(m[6], m[7], m[8]),
    );
    let state = try_ffi!(rv_euler_from_cartesian(&cart.into(), &InitPolicy::Custom(seed)));
    unsafe { *out = state.into() };
    RvStatus::Ok
}

/// Builds the ten-parameter state from a spherical state using the
/// default frame policy.
///
/// # Safety
///
/// `spherical` must be valid for reads and `out` for writes, or null.
#[no_mangle]
pub unsafe extern "C" fn rv_state_from_spherical(
    spherical: *const RvSphericalState,
    out: *mut RvState,
) -> RvStatus {
    clear_last_error();
    let spherical = require!(unsafe { read_in(spherical) });
    if out.is_null() {
        return require!(None::<RvStatus>);
    }
    let cart = try_ffi!(cartesian_from_spherical(&spherical.into()));
    let state = try_ffi!(rv_euler_from_cartesian(&cart, &InitPolicy::HAligned));
    unsafe { *out = state.into() };
    RvStatus::Ok
}

/// Cartesian position and velocity of a ten-parameter state.
///
/// # Safety
///
/// `state` must be valid for reads and `out` for writes, or null.
#[no_mangle]
pub unsafe extern "C" fn rv_state_to_cartesian(
    state: *const RvState,
    out: *mut RvCartesianState,
) -> RvStatus {
    clear_last_error();
    let state = require!(unsafe { read_in(state) });
    if out.is_null() {
        return require!(None::<RvStatus>);
    }
    let cart = try_ffi!(cartesian_from_rv_euler(&state.into()));
    unsafe { *out = cart.into() };
    RvStatus::Ok
}

/// Spherical image of a ten-parameter state.  Fails with
/// [`RvStatus::DegenerateGeometry`] at the poles, where longitude and
/// azimuth are undefined.
///
/// # Safety
///
/// `state` must be valid for reads and `out` for writes, or null.
#[no_mangle]
pub unsafe extern "C" fn rv_state_to_spherical(
    state: *const RvState,
    out: *mut RvSphericalState,
) -> RvStatus {
    clear_last_error();
    let state = require!(unsafe { read_in(state) });
    if out.is_null() {
        return require!(None::<RvStatus>);
    }
    let cart = try_ffi!(cartesian_from_rv_euler(&state.into()));
    let spherical = try_ffi!(spherical_from_cartesian(&cart));
    unsafe { *out = spherical.into() };
    RvStatus::Ok
}

/// Strict structural validation: positive radius, finite speed, unit
/// quaternions.
///
/// # Safety
///
/// `state` must be valid for reads, or null.
#[no_mangle]
pub unsafe extern "C" fn rv_state_validate(state: *const RvState) -> RvStatus {
    clear_last_error();
    let state: RvEulerState = require!(unsafe { read_in(state) }).into();
    try_ffi!(state.validate_strict());
    RvStatus::Ok
}

// ── Dynamics ────────────────────────────────────────────────────────────────

/// Time derivative of the state under inverse-square gravity with
/// parameter `mu` (km³/s²) in an inertial observation frame.
///
/// # Safety
///
/// `state` must be valid for reads and `out` for writes, or null.
#[no_mangle]
pub unsafe extern "C" fn rv_two_body_derivative(
    state: *const RvState,
    mu: f64,
    out: *mut RvRates,
) -> RvStatus {
    clear_last_error();
    let state: RvEulerState = require!(unsafe { read_in(state) }).into();
    if out.is_null() {
        return require!(None::<RvStatus>);
    }
    let provider = two_body_force_provider(mu);
    let rates = try_ffi!(state_derivative(
        0.0,
        &state,
        &provider,
        &ObservationFrameSpec::INERTIAL,
        &MassProperties::new(1.0),
    ));
    unsafe { *out = rates.into() };
    RvStatus::Ok
}

// ── Propagation ─────────────────────────────────────────────────────────────

/// Opaque propagated trajectory; query with [`rv_trajectory_len`] and
/// [`rv_trajectory_sample`], release with [`rv_trajectory_free`].
pub struct RvTrajectory {
    inner: Trajectory<RvEulerState>,
}

/// Propagates two-body motion from `state0` over `[t0, tf]` with `n`
/// fixed steps of classical fourth-order Runge-Kutta (renormalizing the
/// quaternions after each step when `renormalize` is set) and returns an
/// owned trajectory handle through `out`.
///
/// # Safety
///
/// `state0` must be valid for reads and `out` for writes, or null.  On
/// success `*out` owns heap memory that must be released with
/// [`rv_trajectory_free`].
#[no_mangle]
pub unsafe extern "C" fn rv_propagate_two_body(
    state0: *const RvState,
    mu: f64,
    t0: f64,
    tf: f64,
    n: usize,
    renormalize: bool,
    out: *mut *mut RvTrajectory,
) -> RvStatus {
    clear_last_error();
    let state0: RvEulerState = require!(unsafe { read_in(state0) }).into();
    if out.is_null() {
        return require!(None::<RvStatus>);
    }
    try_ffi!(state0.validate_strict());
    let provider = two_body_force_provider(mu);
    let frame = ObservationFrameSpec::INERTIAL;
    let mass = MassProperties::new(1.0);
    let traj = try_ffi!(rk4_propagate(
        |t, s: &RvEulerState| state_derivative(t, s, &provider, &frame, &mass),
        state0,
        t0,
        tf,
        n,
        renormalize,
    ));
    let handle = Box::new(RvTrajectory { inner: traj });
    unsafe { *out = Box::into_raw(handle) };
    RvStatus::Ok
}

/// Number of samples in a trajectory (0 for a null handle).
///
/// # Safety
///
/// `traj` must be null or a live handle from [`rv_propagate_two_body`].
#[no_mangle]
pub unsafe extern "C" fn rv_trajectory_len(traj: *const RvTrajectory) -> usize {
    if traj.is_null() {
        return 0;
    }
    unsafe { &*traj }.inner.len()
}

/// Reads sample `index` of a trajectory: its time into `t_out` and its
/// state into `state_out` (either output may be null to skip it).
///
/// # Safety
///
/// `traj` must be null or a live handle; non-null outputs must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn rv_trajectory_sample(
    traj: *const RvTrajectory,
    index: usize,
    t_out: *mut f64,
    state_out: *mut RvState,
) -> RvStatus {
    clear_last_error();
    if traj.is_null() {
        return require!(None::<RvStatus>);
    }
    let traj = unsafe { &*traj };
    if index >= traj.inner.len() {
        set_last_error(format!(
            "index {index} out of range for trajectory of {} samples",
            traj.inner.len()
        ));
        return RvStatus::OutOfRange;
    }
    if !t_out.is_null() {
        unsafe { *t_out = traj.inner.times[index] };
    }
    if !state_out.is_null() {
        unsafe { *state_out = traj.inner.states[index].into() };
    }
    RvStatus::Ok
}

/// Releases a trajectory handle.  Null is ignored; a handle must not be
/// used after it is freed.
///
/// # Safety
///
/// `traj` must be null or a live handle from [`rv_propagate_two_body`]
/// that has not already been freed.
#[no_mangle]
pub unsafe extern "C" fn rv_trajectory_free(traj: *mut RvTrajectory) {
    if !traj.is_null() {
        drop(unsafe { Box::from_raw(traj) });
    }
}
