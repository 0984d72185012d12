//! Conversions among Cartesian, spherical, and quaternion-based states.
//!
//! The Cartesian pair (position, velocity) is the common currency: each of
//! the other two parameterizations converts to and from it, and the
//! composed paths (spherical ↔ rv-Euler) go through it.
//!
//! Angle conventions (shared with `spherical_dynamics`): longitude `phi`
//! positive east, geocentric latitude `theta` positive north, flight-path
//! angle `gamma` positive above the horizon, azimuth `psi` measured from
//! north positive toward east.  The local triad at longitude/latitude
//! `(phi, theta)` is
//!
//! ```text
//! u_r = (cos theta cos phi, cos theta sin phi, sin theta)
//! u_e = (-sin phi, cos phi, 0)                     (east)
//! u_n = (-sin theta cos phi, -sin theta sin phi, cos theta)   (north)
//! ```
//!
//! and the velocity decomposes as
//! `v_vec = v (sin gamma u_r + cos gamma (cos psi u_n + sin psi u_e))`.
//!
//! Building a ten-parameter quaternion state from position and velocity
//! requires fixing one rotation the physics does not care about: any frame
//! with its first axis along the radial is an admissible position frame.
//! [`InitPolicy`] resolves it — `HAligned` completes both frames with the
//! orbit normal (the natural choice for orbital motion), and `Custom`
//! accepts a caller-supplied position frame for geometries where the orbit
//! normal is undefined, such as purely radial flight.

use crate::error::Error;
use crate::euler_param_core::{
    dcm_from_euler_params, euler_params_from_axis_angle, euler_params_from_dcm, AxisAngle,
    EulerParams, Mat3, Vec3,
};
use crate::rv_euler_dynamics::{RvEulerRates, RvEulerState};
use crate::spherical_dynamics::{SphericalRates, SphericalState};
use crate::tolerances;

/// Position and observation-frame-relative velocity in the observation
/// frame's basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CartesianState {
    /// Position (km).
    pub r_vec: Vec3,
    /// Velocity as observed in the frame (km/s).
    pub v_vec: Vec3,
}

impl CartesianState {
    pub fn new(r_vec: Vec3, v_vec: Vec3) -> CartesianState {
        CartesianState { r_vec, v_vec }
    }
}

/// Resolution of the free rotation about the radial when building a
/// quaternion state from position and velocity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InitPolicy {
    /// Complete both frames with the instantaneous orbit normal
    /// `h = r x v`: the position frame is `(r_hat, h_hat x r_hat, h_hat)`
    /// and the velocity frame is `(v_hat, h_hat x v_hat, h_hat)`.
    /// Degenerate when `r` and `v` are parallel.
    HAligned,
    /// Use the given matrix as the position-frame DCM `C_AE`; its first
    /// row must be the radial direction.  The velocity frame is reached
    /// from it by the minimal rotation taking the radial onto the velocity
    /// direction (identity for radial-outward flight, a half-turn about
    /// the third axis for radial-inward flight).
    Custom(Mat3),
}

/// Local east-north-up style triad `(u_r, u_e, u_n)` at a longitude and
/// latitude.
fn local_triad(phi: f64, theta: f64) -> (Vec3, Vec3, Vec3) {
    let (sin_p, cos_p) = phi.sin_cos();
    let (sin_t, cos_t) = theta.sin_cos();
    let u_r = Vec3::new(cos_t * cos_p, cos_t * sin_p, sin_t);
    let u_e = Vec3::new(-sin_p, cos_p, 0.0);
    let u_n = Vec3::new(-sin_t * cos_p, -sin_t * sin_p, cos_t);
    (u_r, u_e, u_n)
}

// ── rv-Euler ↔ Cartesian ────────────────────────────────────────────────────

/// Position and velocity vectors of a quaternion state: the radial is the
/// first row of `C_AE` and the velocity direction the first row of
/// `C_BE = C_BA C_AE`, scaled by `r` and `v`.
pub fn cartesian_from_rv_euler(state: &RvEulerState) -> Result<CartesianState, Error> {
    state.validate()?;
    let (c_ae, c_ba) = state.dcms()?;
    let c_be = c_ba * c_ae;
    Ok(CartesianState { r_vec: c_ae.row(0) * state.r, v_vec: c_be.row(0) * state.v })
}

/// Builds the ten-parameter quaternion state for a Cartesian state under
/// the given frame-completion policy.
///
/// The reconstruction through [`cartesian_from_rv_euler`] is the identity
/// on the inputs (within rounding) for every policy; the policies differ
/// only in the unobservable rotation about the radial.
pub fn rv_euler_from_cartesian(
    c: &CartesianState,
    policy: &InitPolicy,
) -> Result<RvEulerState, Error> {
    if !c.r_vec.is_finite() || !c.v_vec.is_finite() {
        return Err(Error::InvalidInput("cartesian state has non-finite components".into()));
    }
    let r = c.r_vec.norm();
    let v = c.v_vec.norm();
    if r <= 0.0 {
        return Err(Error::Domain("position vector must be nonzero".into()));
    }
    if v <= 0.0 {
        return Err(Error::Domain("velocity vector must be nonzero".into()));
    }
    let r_hat = c.r_vec * (1.0 / r);
    let v_hat = c.v_vec * (1.0 / v);

    let (c_ae, c_ba) = match policy {
        InitPolicy::HAligned => {
            let h = c.r_vec.cross(&c.v_vec);
            if h.norm() <= tolerances::DEGENERATE_DIRECTION * r * v {
                return Err(Error::DegenerateGeometry(
                    "position and velocity are parallel: the orbit normal is undefined; \
                     supply a Custom position frame instead"
                        .into(),
                ));
            }
            let h_hat = h.normalized()?;
            let c_ae = Mat3::from_rows(r_hat, h_hat.cross(&r_hat), h_hat);
            let c_be = Mat3::from_rows(v_hat, h_hat.cross(&v_hat), h_hat);
            (c_ae, c_be * c_ae.transpose())
        }
        InitPolicy::Custom(seed) => {
            seed.validate_rotation(tolerances::ROTATION_ACCEPT)?;
            let misalign = (seed.row(0) - r_hat).norm();
            if misalign > tolerances::ROTATION_ACCEPT {
                return Err(Error::InvalidInput(format!(
                    "custom position frame's first axis deviates from the radial by {misalign:.3e}"
                )));
            }
            // Velocity direction in the position frame; the velocity frame
            // is the minimal rotation taking the first axis onto it.
            let v_a = *seed * v_hat;
            let lateral = (v_a.y * v_a.y + v_a.z * v_a.z).sqrt();
            let ep_b = if lateral <= tolerances::DEGENERATE_DIRECTION {
                if v_a.x >= 0.0 {
                    EulerParams::IDENTITY
                } else {
                    // Radially inward: half-turn about the third axis.
                    EulerParams::new(0.0, 0.0, 1.0, 0.0)
                }
            } else {
                let axis = Vec3::new(0.0, -v_a.z, v_a.y) * (1.0 / lateral);
                let angle = lateral.atan2(v_a.x);
                euler_params_from_axis_angle(&AxisAngle::new(axis, angle))?
            };
            (*seed, dcm_from_euler_params(&ep_b)?)
        }
    };

    Ok(RvEulerState {
        r,
        ep_a: euler_params_from_dcm(&c_ae)?,
        v,
        ep_b: euler_params_from_dcm(&c_ba)?,
    })
}

// ── spherical ↔ Cartesian ───────────────────────────────────────────────────

/// Spherical state of a Cartesian state.  Errors within
/// [`tolerances::POLE_GUARD`] of a pole (longitude undefined) and for zero
/// velocity (flight direction undefined).  For vertical flight the azimuth
/// of the vanishing horizontal velocity component is reported as computed
/// by `atan2`, which is numerically arbitrary.
pub fn spherical_from_cartesian(c: &CartesianState) -> Result<SphericalState, Error> {
    if !c.r_vec.is_finite() || !c.v_vec.is_finite() {
        return Err(Error::InvalidInput("cartesian state has non-finite components".into()));
    }
    let r = c.r_vec.norm();
    if r <= 0.0 {
        return Err(Error::Domain("position vector must be nonzero".into()));
    }
    let horizontal = (c.r_vec.x * c.r_vec.x + c.r_vec.y * c.r_vec.y).sqrt();
    if horizontal < tolerances::POLE_GUARD * r {
        return Err(Error::DegenerateGeometry(
            "position is on the polar axis: longitude is undefined".into(),
        ));
    }
    let v = c.v_vec.norm();
    if v <= 0.0 {
        return Err(Error::Domain("velocity vector must be nonzero".into()));
    }
    let phi = c.r_vec.y.atan2(c.r_vec.x);
    let theta = (c.r_vec.z / r).asin();
    let (u_r, u_e, u_n) = local_triad(phi, theta);
    let v_hat = c.v_vec * (1.0 / v);
    let gamma = v_hat.dot(&u_r).clamp(-1.0, 1.0).asin();
    let psi = v_hat.dot(&u_e).atan2(v_hat.dot(&u_n));
    Ok(SphericalState { r, phi, theta, v, gamma, psi })
}

/// Cartesian state of a spherical state (total on finite inputs with
/// `r > 0`; both poles map fine in this direction).
pub fn cartesian_from_spherical(s: &SphericalState) -> Result<CartesianState, Error> {
    s.validate()?;
    let (u_r, u_e, u_n) = local_triad(s.phi, s.theta);
    let (sin_g, cos_g) = s.gamma.sin_cos();
    let (sin_p, cos_p) = s.psi.sin_cos();
    let v_hat = u_r * sin_g + u_n * (cos_g * cos_p) + u_e * (cos_g * sin_p);
    Ok(CartesianState { r_vec: u_r * s.r, v_vec: v_hat * s.v })
}

// ── composed paths ──────────────────────────────────────────────────────────

/// Quaternion state for a spherical state (through Cartesian).
pub fn rv_euler_from_spherical(
    s: &SphericalState,
    policy: &InitPolicy,
) -> Result<RvEulerState, Error> {
    rv_euler_from_cartesian(&cartesian_from_spherical(s)?, policy)
}

/// Spherical state for a quaternion state (through Cartesian).
pub fn spherical_from_rv_euler(state: &RvEulerState) -> Result<SphericalState, Error> {
    spherical_from_cartesian(&cartesian_from_rv_euler(state)?)
}

// ── acceleration reconstruction ─────────────────────────────────────────────

/// Observation-frame acceleration implied by a quaternion state and its
/// rates: differentiating `v_vec = v b1_hat` gives
/// `a = v_dot b1_hat + v (w_EB x b1_hat)` with the velocity frame's total
/// angular velocity `w_EB` assembled from both frame rates.
///
/// Together with [`cartesian_acceleration_from_spherical`] this puts both
/// parameterizations' derivatives in a common basis, where equivalent
/// states and forces must produce identical accelerations.
pub fn cartesian_acceleration_from_rv_euler(
    state: &RvEulerState,
    rates: &RvEulerRates,
) -> Result<Vec3, Error> {
    let (c_ae, c_ba) = state.dcms()?;
    let c_be = c_ba * c_ae;
    let b1_e = c_be.row(0);
    // Angular velocity of B relative to E, in E coordinates: the A-frame
    // part is given in the A basis and the B-relative part in the B basis.
    let w_eb_e = c_ae.transpose() * Vec3::new(0.0, rates.omega_a2, rates.omega_a3)
        + c_be.transpose() * Vec3::new(0.0, rates.omega_b2, rates.omega_b3);
    Ok(b1_e * rates.v_dot + w_eb_e.cross(&b1_e) * state.v)
}

/// Observation-frame acceleration implied by a spherical state and its
/// rates, by the chain rule through
/// `v_vec = v (sin gamma u_r + cos gamma (cos psi u_n + sin psi u_e))`
/// and the angle-rate derivatives of the local triad.
pub fn cartesian_acceleration_from_spherical(
    state: &SphericalState,
    rates: &SphericalRates,
) -> Result<Vec3, Error> {
    state.validate()?;
    let (u_r, u_e, u_n) = local_triad(state.phi, state.theta);
    let (sin_g, cos_g) = state.gamma.sin_cos();
    let (sin_p, cos_p) = state.psi.sin_cos();
    let (sin_t, cos_t) = state.theta.sin_cos();

    // Triad rates under longitude/latitude motion.
    let u_r_dot = u_e * (rates.phi_dot * cos_t) + u_n * rates.theta_dot;
    let u_n_dot = u_e * (-rates.phi_dot * sin_t) - u_r * rates.theta_dot;
    let u_e_dot = (u_r * cos_t - u_n * sin_t) * -rates.phi_dot;

    let v_hat = u_r * sin_g + u_n * (cos_g * cos_p) + u_e * (cos_g * sin_p);
    let v_hat_dot = u_r * (rates.gamma_dot * cos_g)
        + u_r_dot * sin_g
        + u_n * (-rates.gamma_dot * sin_g * cos_p - rates.psi_dot * cos_g * sin_p)
        + u_n_dot * (cos_g * cos_p)
        + u_e * (-rates.gamma_dot * sin_g * sin_p + rates.psi_dot * cos_g * cos_p)
        + u_e_dot * (cos_g * sin_p);

    Ok(v_hat * rates.v_dot + v_hat_dot * state.v)
}
