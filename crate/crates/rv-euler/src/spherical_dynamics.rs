//! Baseline spherical-coordinate equations of motion.
//!
//! This is the classical angle-based parameterization the quaternion
//! formulation is measured against: radius, longitude, geocentric latitude,
//! speed, flight-path angle, and azimuth.  It is compact and familiar — and
//! singular.  The longitude and azimuth rates divide by `cos(theta)`
//! (undefined over the poles) and the entry azimuth rate divides by
//! `cos(gamma)` (undefined in vertical flight).  Both singularities are
//! surfaced as explicit domain errors inside a narrow guard band rather
//! than as infinities.
//!
//! Conventions (shared with `state_conversion`):
//!
//! * `phi` — longitude, positive east;
//! * `theta` — geocentric latitude, positive north;
//! * `gamma` — flight-path angle, positive above the local horizon;
//! * `psi` — azimuth of the horizontal velocity component, measured from
//!   north, positive toward east (`psi = 90°` is due east).
//!
//! For the rotating-planet entry equations the state is relative to the
//! rotating frame: `phi` is frame-fixed longitude and `v`, `gamma`, `psi`
//! describe the frame-relative velocity.

use crate::error::Error;
use crate::tolerances;

/// Spherical translational state.
///
/// For inertial two-body motion all six follow the inertial velocity; for
/// rotating-planet entry they follow the planet-relative velocity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalState {
    /// Geocentric radius (km), > 0.
    pub r: f64,
    /// Longitude (rad), positive east.
    pub phi: f64,
    /// Geocentric latitude (rad), in (-pi/2, pi/2) for finite rates.
    pub theta: f64,
    /// Speed (km/s), > 0.
    pub v: f64,
    /// Flight-path angle above the horizon (rad).
    pub gamma: f64,
    /// Azimuth from north, positive east (rad).
    pub psi: f64,
}

impl SphericalState {
    #[allow(clippy::too_many_arguments)]
    pub fn new(r: f64, phi: f64, theta: f64, v: f64, gamma: f64, psi: f64) -> SphericalState {
        SphericalState { r, phi, theta, v, gamma, psi }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let fields = [self.r, self.phi, self.theta, self.v, self.gamma, self.psi];
        if fields.iter().any(|f| !f.is_finite()) {
            return Err(Error::InvalidInput("spherical state has non-finite fields".into()));
        }
        if self.r <= 0.0 {
            return Err(Error::Domain(format!("radius must be positive, got {}", self.r)));
        }
        Ok(())
    }
}

/// Time derivative of [`SphericalState`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalRates {
    pub r_dot: f64,
    pub phi_dot: f64,
    pub theta_dot: f64,
    pub v_dot: f64,
    pub gamma_dot: f64,
    pub psi_dot: f64,
}

/// Aerodynamic forcing for the entry equations: lift and drag magnitudes,
/// the bank angle resolving lift about the velocity axis, and the vehicle
/// mass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntryForcing {
    /// Lift magnitude (kg·km/s², i.e. kN for mass in kg).
    pub lift: f64,
    /// Drag magnitude (kg·km/s²).
    pub drag: f64,
    /// Bank angle (rad): 0 keeps lift in the vertical plane, pointing away
    /// from the planet for upright flight.
    pub sigma: f64,
    /// Vehicle mass (kg).
    pub mass: f64,
}

impl EntryForcing {
    /// No aerodynamic force; `mass` is arbitrary but must be positive.
    pub fn coasting(mass: f64) -> EntryForcing {
        EntryForcing { lift: 0.0, drag: 0.0, sigma: 0.0, mass }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(Error::InvalidInput(format!("mass must be positive, got {}", self.mass)));
        }
        if !self.lift.is_finite() || !self.drag.is_finite() || !self.sigma.is_finite() {
            return Err(Error::InvalidInput("entry forcing has non-finite fields".into()));
        }
        Ok(())
    }
}

fn check_pole(cos_theta: f64) -> Result<(), Error> {
    if cos_theta.abs() < tolerances::POLE_GUARD {
        return Err(Error::Domain(format!(
            "latitude within {:.0e} of a pole: longitude and azimuth rates are undefined",
            tolerances::POLE_GUARD
        )));
    }
    Ok(())
}

fn check_speed(v: f64) -> Result<(), Error> {
    if v <= tolerances::MIN_SPEED_KM_S {
        return Err(Error::Domain(format!(
            "speed must exceed {} km/s, got {v}",
            tolerances::MIN_SPEED_KM_S
        )));
    }
    Ok(())
}

/// Two-body (inverse-square gravity, non-rotating frame) rates:
///
/// ```text
/// r_dot     = v sin(gamma)
/// phi_dot   = v cos(gamma) sin(psi) / (r cos(theta))
/// theta_dot = (v/r) cos(gamma) cos(psi)
/// v_dot     = -(mu/r^2) sin(gamma)
/// gamma_dot = cos(gamma) (v/r - mu/(r^2 v))
/// psi_dot   = (v/r) cos(gamma) sin(psi) tan(theta)
/// ```
///
/// Errors when the latitude is inside [`tolerances::POLE_GUARD`] of a pole,
/// where `phi_dot` and `psi_dot` blow up — the structural defect this
/// parameterization is the baseline for.
pub fn two_body_spherical_rates(state: &SphericalState, mu: f64) -> Result<SphericalRates, Error> {
    state.validate()?;
    check_speed(state.v)?;
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::InvalidInput(format!(
            "gravitational parameter must be positive, got {mu}"
        )));
    }
    let (sin_g, cos_g) = state.gamma.sin_cos();
    let (sin_p, cos_p) = state.psi.sin_cos();
    let (sin_t, cos_t) = state.theta.sin_cos();
    check_pole(cos_t)?;
    let (r, v) = (state.r, state.v);
    let g = mu / (r * r);
    Ok(SphericalRates {
        r_dot: v * sin_g,
        phi_dot: v * cos_g * sin_p / (r * cos_t),
        theta_dot: v / r * cos_g * cos_p,
        v_dot: -g * sin_g,
        gamma_dot: cos_g * (v / r - g / v),
        psi_dot: v / r * cos_g * sin_p * sin_t / cos_t,
    })
}

/// Rotating-planet entry rates with lift, drag, and bank forcing.
///
/// The state is planet-relative; `omega_e` (rad/s) is the planet spin rate
/// about the frame's third axis.  The azimuth equation is
///
/// ```text
/// psi_dot = L sin(sigma) / (m v cos(gamma))
///         + (v/r) cos(gamma) sin(psi) tan(theta)
///         - 2 w_e (tan(gamma) cos(psi) cos(theta) - sin(theta))
///         + (r w_e^2 / (v cos(gamma))) sin(psi) sin(theta) cos(theta)
/// ```
///
/// and the companions follow the same conventions:
///
/// ```text
/// r_dot     = v sin(gamma)
/// phi_dot   = v cos(gamma) sin(psi) / (r cos(theta))
/// theta_dot = (v/r) cos(gamma) cos(psi)
/// v_dot     = -D/m - g sin(gamma)
///           + w_e^2 r cos(theta) (sin(gamma) cos(theta) - cos(gamma) sin(theta) cos(psi))
/// gamma_dot = (L cos(sigma)/m - g cos(gamma)) / v + (v/r) cos(gamma)
///           + 2 w_e cos(theta) sin(psi)
///           + (w_e^2 r / v) cos(theta) (cos(gamma) cos(theta) + sin(gamma) sin(theta) cos(psi))
/// ```
///
/// Besides the pole guard this errors when `|cos(gamma)|` falls inside
/// [`tolerances::VERTICAL_FLIGHT_GUARD`]: the azimuth of a vertical
/// velocity is undefined, which is exactly the configuration the
/// quaternion formulation handles without incident.
pub fn entry_spherical_rates(
    state: &SphericalState,
    forces: &EntryForcing,
    mu: f64,
    omega_e: f64,
) -> Result<SphericalRates, Error> {
    state.validate()?;
    check_speed(state.v)?;
    forces.validate()?;
    if !(mu.is_finite() && mu >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "gravitational parameter must be non-negative, got {mu}"
        )));
    }
    if !omega_e.is_finite() {
        return Err(Error::InvalidInput("planet spin rate must be finite".into()));
    }
    let (sin_g, cos_g) = state.gamma.sin_cos();
    let (sin_p, cos_p) = state.psi.sin_cos();
    let (sin_t, cos_t) = state.theta.sin_cos();
    check_pole(cos_t)?;
    if cos_g.abs() < tolerances::VERTICAL_FLIGHT_GUARD {
        return Err(Error::Domain(format!(
            "flight-path angle within {:.0e} of vertical: azimuth rate is undefined",
            tolerances::VERTICAL_FLIGHT_GUARD
        )));
    }
    let (r, v, m) = (state.r, state.v, forces.mass);
    let g = mu / (r * r);
    let (sin_s, cos_s) = forces.sigma.sin_cos();
    let lift_per_m = forces.lift / m;
    let drag_per_m = forces.drag / m;
    let w2r = omega_e * omega_e * r;

    Ok(SphericalRates {
        r_dot: v * sin_g,
        phi_dot: v * cos_g * sin_p / (r * cos_t),
        theta_dot: v / r * cos_g * cos_p,
        v_dot: -drag_per_m - g * sin_g + w2r * cos_t * (sin_g * cos_t - cos_g * sin_t * cos_p),
        gamma_dot: (lift_per_m * cos_s - g * cos_g) / v
            + v / r * cos_g
            + 2.0 * omega_e * cos_t * sin_p
            + w2r / v * cos_t * (cos_g * cos_t + sin_g * sin_t * cos_p),
        psi_dot: lift_per_m * sin_s / (v * cos_g) + v / r * cos_g * sin_p * sin_t / cos_t
            - 2.0 * omega_e * (sin_g / cos_g * cos_p * cos_t - sin_t)
            + w2r / (v * cos_g) * sin_p * sin_t * cos_t,
    })
}
