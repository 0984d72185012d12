//! Translational dynamics in the radius/speed + double-quaternion state.
//!
//! The state of a point mass is carried as ten parameters
//! `{r, eps_A, eta_A, v, eps_B, eta_B}`:
//!
//! * `r` — geocentric radius (km) and the Euler parameters of `C_AE`, where
//!   frame `A` has its first axis along the position vector, so the position
//!   in the observation frame `E` is `r * a1_hat`;
//! * `v` — `E`-relative speed (km/s) and the Euler parameters of `C_BA`,
//!   where frame `B` has its first axis along the `E`-relative velocity, so
//!   the velocity is `v * b1_hat`.
//!
//! The frames are pinned down by two nonholonomic constraints: neither `A`
//! nor `B` ever rolls about its own first axis (`omega_A1 = omega_B1 = 0`).
//! That choice makes the attitude of both frames follow the translational
//! motion uniquely, and — unlike latitude/longitude or flight-path/heading
//! angles — the resulting equations of motion contain no trigonometric
//! functions and no singular configurations at poles or vertical flight.
//!
//! The observation frame `E` may rotate and accelerate relative to an
//! inertial frame `N` ([`ObservationFrameSpec`]); the frame-motion terms
//! (Coriolis, angular-acceleration, and centripetal) are folded into an
//! *apparent force* so the kinetic equations keep a Newtonian shape.
//!
//! Physical force models plug in through [`ForceProvider`]; shipped
//! providers cover inverse-square gravity ([`two_body_force_provider`]) and
//! lift/drag atmospheric entry with prescribed angle-of-attack and bank
//! profiles ([`entry_force_provider`]).
//!
//! Units: km, s, rad, and a consistent mass unit (kg everywhere in the
//! shipped providers; forces then carry kg·km/s² = kN).

use crate::error::Error;
use crate::euler_param_core::{
    dcm_from_euler_params_raw, euler_param_rates, EulerParamRates, EulerParams, Mat3, Vec3,
};
use crate::tolerances;

// ── State and rate types ────────────────────────────────────────────────────

/// Ten-parameter translational state: radius + position-frame quaternion +
/// speed + velocity-frame quaternion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RvEulerState {
    /// Geocentric radius (km), > 0.
    pub r: f64,
    /// Euler parameters of `C_AE` (observation frame -> position frame).
    pub ep_a: EulerParams,
    /// Observation-frame-relative speed (km/s), > 0 for the kinetic
    /// equations (they divide by `v`).
    pub v: f64,
    /// Euler parameters of `C_BA` (position frame -> velocity frame).
    pub ep_b: EulerParams,
}

impl RvEulerState {
    pub fn new(r: f64, ep_a: EulerParams, v: f64, ep_b: EulerParams) -> RvEulerState {
        RvEulerState { r, ep_a, v, ep_b }
    }

    /// Sanity check for the integration path: radius positivity, finite
    /// speed, and quaternion norms inside the broad
    /// [`tolerances::NORM_SANITY_BAND`].  Runge-Kutta stage states sit off
    /// the unit manifold by O(h²), so this deliberately does not demand
    /// unit norm; use [`RvEulerState::validate_strict`] when ingesting a
    /// state from outside.
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(Error::Domain(format!("radius must be positive, got {}", self.r)));
        }
        if !self.v.is_finite() {
            return Err(Error::Domain(format!("speed must be finite, got {}", self.v)));
        }
        for (name, ep) in [("position", &self.ep_a), ("velocity", &self.ep_b)] {
            let dev = ep.norm_error();
            if !ep.is_finite() || dev > tolerances::NORM_SANITY_BAND {
                return Err(Error::Domain(format!(
                    "{name}-frame euler parameters have diverged: |norm - 1| = {dev:.3e}"
                )));
            }
        }
        Ok(())
    }

    /// Ingestion check: [`RvEulerState::validate`] plus unit quaternion
    /// norms within [`tolerances::UNIT_NORM_ACCEPT`].
    pub fn validate_strict(&self) -> Result<(), Error> {
        self.validate()?;
        for (name, ep) in [("position", &self.ep_a), ("velocity", &self.ep_b)] {
            let dev = ep.norm_error();
            if dev > tolerances::UNIT_NORM_ACCEPT {
                return Err(Error::InvalidInput(format!(
                    "{name}-frame euler parameters are not unit: |norm - 1| = {dev:.3e}"
                )));
            }
        }
        Ok(())
    }

    /// Direction cosine matrices `(C_AE, C_BA)` of the two quaternions,
    /// evaluated by the raw quadratic form (see
    /// [`dcm_from_euler_params_raw`]) so integrator stage states work.
    pub fn dcms(&self) -> Result<(Mat3, Mat3), Error> {
        Ok((dcm_from_euler_params_raw(&self.ep_a)?, dcm_from_euler_params_raw(&self.ep_b)?))
    }
}

/// Time derivative of [`RvEulerState`], with the angular velocities of both
/// frames kept as diagnostics (their first components are identically zero
/// by construction).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RvEulerRates {
    pub r_dot: f64,
    pub ep_a_rates: EulerParamRates,
    pub v_dot: f64,
    pub ep_b_rates: EulerParamRates,
    /// Position-frame angular velocity components (rad/s, A basis).
    pub omega_a2: f64,
    pub omega_a3: f64,
    /// Velocity-frame angular velocity components relative to A (rad/s, B basis).
    pub omega_b2: f64,
    pub omega_b3: f64,
}

/// Rotation of the observation frame `E` relative to the inertial frame,
/// expressed in the `E` basis.  For an Earth-fixed frame with constant spin
/// use `omega_e = (0, 0, 7.292115e-5)` rad/s and `alpha_e = 0`; for an
/// inertial observation frame use [`ObservationFrameSpec::INERTIAL`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObservationFrameSpec {
    /// Angular velocity of E in the inertial frame (rad/s, E basis).
    pub omega_e: Vec3,
    /// Angular acceleration of E in the inertial frame (rad/s², E basis).
    pub alpha_e: Vec3,
}

impl ObservationFrameSpec {
    /// Non-rotating observation frame: apparent force equals physical force.
    pub const INERTIAL: ObservationFrameSpec =
        ObservationFrameSpec { omega_e: Vec3::ZERO, alpha_e: Vec3::ZERO };

    /// Frame spinning at a constant rate about its third axis.
    pub fn spinning_z(rate: f64) -> ObservationFrameSpec {
        ObservationFrameSpec { omega_e: Vec3::new(0.0, 0.0, rate), alpha_e: Vec3::ZERO }
    }
}

/// Physical force on the particle, components in the `B` (velocity-frame)
/// basis.  Units are mass-consistent: with mass in kg the components are
/// kg·km/s² (kN).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ForceOutput {
    pub f: Vec3,
}

/// Mass of the particle (kg in the shipped providers; any unit consistent
/// with the force model works).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassProperties {
    pub m: f64,
}

impl MassProperties {
    pub fn new(m: f64) -> MassProperties {
        MassProperties { m }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.m.is_finite() && self.m > 0.0) {
            return Err(Error::InvalidInput(format!("mass must be positive, got {}", self.m)));
        }
        Ok(())
    }
}

/// Source of the physical force acting on the particle.
///
/// Implementations receive the current time, state, and the two direction
/// cosine matrices (so they need not recompute them), and return the force
/// in the `B` basis.  Implementations must be deterministic functions of
/// their arguments; any closure with the matching shape implements the
/// trait automatically.
pub trait ForceProvider {
    fn force(
        &self,
        t: f64,
        state: &RvEulerState,
        c_ae: &Mat3,
        c_ba: &Mat3,
        mass: &MassProperties,
    ) -> Result<ForceOutput, Error>;
}

impl<F> ForceProvider for F
where
    F: Fn(f64, &RvEulerState, &Mat3, &Mat3, &MassProperties) -> Result<ForceOutput, Error>,
{
    fn force(
        &self,
        t: f64,
        state: &RvEulerState,
        c_ae: &Mat3,
        c_ba: &Mat3,
        mass: &MassProperties,
    ) -> Result<ForceOutput, Error> {
        self(t, state, c_ae, c_ba, mass)
    }
}

// ── Kinematics ──────────────────────────────────────────────────────────────

/// Output of [`kinematic_rates`]: radius rate plus the position-frame
/// angular velocity and quaternion rates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KinematicRates {
    pub r_dot: f64,
    pub omega_a2: f64,
    pub omega_a3: f64,
    pub ep_a_rates: EulerParamRates,
}

/// Kinematic half of the equations of motion.
///
/// Differentiating the position `r * a1_hat` as observed in `E` and
/// matching it against the velocity `v * b1_hat` yields, after applying the
/// no-roll constraint `omega_A1 = 0`:
///
/// ```text
/// r_dot    = v (1 - 2(eB2^2 + eB3^2))
/// omega_A2 = (2v/r)(etaB eB2 - eB1 eB3)
/// omega_A3 = (2v/r)(etaB eB3 + eB1 eB2)
/// ```
///
/// The `C_AE` quaternion rates follow from the angular velocity
/// `(0, omega_A2, omega_A3)`.
pub fn kinematic_rates(state: &RvEulerState) -> Result<KinematicRates, Error> {
    if !(state.r.is_finite() && state.r > 0.0) {
        return Err(Error::Domain(format!(
            "kinematic rates need a positive radius, got {}",
            state.r
        )));
    }
    let eb = &state.ep_b.eps;
    let nb = state.ep_b.eta;
    let r_dot = state.v * (1.0 - 2.0 * (eb.y * eb.y + eb.z * eb.z));
    let two_v_over_r = 2.0 * state.v / state.r;
    let omega_a2 = two_v_over_r * (nb * eb.y - eb.x * eb.z);
    let omega_a3 = two_v_over_r * (nb * eb.z + eb.x * eb.y);
    let ep_a_rates = euler_param_rates(&state.ep_a, &Vec3::new(0.0, omega_a2, omega_a3));
    Ok(KinematicRates { r_dot, omega_a2, omega_a3, ep_a_rates })
}

// ── Apparent force ──────────────────────────────────────────────────────────

/// Per-mass apparent force in the `B` basis.
///
/// Newton's second law written for motion observed in the (possibly
/// rotating) frame `E` keeps its usual shape if the physical force is
/// replaced by the apparent force: physical force per mass, minus the
/// Coriolis acceleration `2 omega x v_rel`, the angular-acceleration term
/// `alpha x r`, and the centripetal term `omega x (omega x r)`.  All three
/// corrections are assembled here directly in the `B` basis:
///
/// ```text
/// f_tilde/m = f/m - 2v [0; C_BE(3,:); -C_BE(2,:)] w_E
///                 - r C_BA [0; C_AE(3,:); -C_AE(2,:)] a_E
///                 - r C_BE (w_E w_E^T - |w_E|^2 I) C_AE^T(:,1)
/// ```
///
/// where `w_E`, `a_E` are the observation-frame rates in `E` coordinates
/// and `C_BE = C_BA C_AE`.  With an inertial frame spec this reduces to
/// `f/m`.
pub fn apparent_force(
    state: &RvEulerState,
    force: &ForceOutput,
    frame: &ObservationFrameSpec,
    mass: &MassProperties,
) -> Result<Vec3, Error> {
    let (c_ae, c_ba) = state.dcms()?;
    apparent_force_with_dcms(state, force, frame, mass, &c_ae, &c_ba)
}

/// [`apparent_force`] with the direction cosine matrices supplied by the
/// caller (they are already in hand inside [`state_derivative`]).
pub fn apparent_force_with_dcms(
    state: &RvEulerState,
    force: &ForceOutput,
    frame: &ObservationFrameSpec,
    mass: &MassProperties,
    c_ae: &Mat3,
    c_ba: &Mat3,
) -> Result<Vec3, Error> {
    mass.validate()?;
    if !force.f.is_finite() {
        return Err(Error::InvalidInput("force has non-finite components".into()));
    }
    if !frame.omega_e.is_finite() || !frame.alpha_e.is_finite() {
        return Err(Error::InvalidInput("observation frame rates are not finite".into()));
    }
    let c_be = *c_ba * *c_ae;
    let w = frame.omega_e;
    let a = frame.alpha_e;

    // Coriolis: 2 v [0; C_BE(3,:); -C_BE(2,:)] w.
    let coriolis =
        Vec3::new(0.0, 2.0 * state.v * c_be.row(2).dot(&w), -2.0 * state.v * c_be.row(1).dot(&w));

    // Angular acceleration of the frame: r C_BA [0; C_AE(3,:); -C_AE(2,:)] a.
    let euler_term = (*c_ba * Vec3::new(0.0, c_ae.row(2).dot(&a), -c_ae.row(1).dot(&a))) * state.r;

    // Centripetal: r C_BE (w w^T - |w|^2 I) r_hat_E, with the radial
    // direction in E coordinates being the first row of C_AE.
    let r_hat_e = c_ae.row(0);
    let centripetal = (c_be * (w * w.dot(&r_hat_e) - r_hat_e * w.norm_squared())) * state.r;

    Ok(force.f * (1.0 / mass.m) - coriolis - euler_term - centripetal)
}

// ── Kinetics ────────────────────────────────────────────────────────────────

/// Output of [`kinetic_rates`]: speed rate plus the velocity-frame angular
/// velocity and quaternion rates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KineticRates {
    pub v_dot: f64,
    pub omega_b2: f64,
    pub omega_b3: f64,
    pub ep_b_rates: EulerParamRates,
}

/// Kinetic half of the equations of motion, using the default speed floor
/// [`tolerances::MIN_SPEED_KM_S`].  See [`kinetic_rates_with_floor`].
pub fn kinetic_rates(
    state: &RvEulerState,
    f_tilde_over_m: &Vec3,
    omega_a2: f64,
    omega_a3: f64,
) -> Result<KineticRates, Error> {
    kinetic_rates_with_floor(state, f_tilde_over_m, omega_a2, omega_a3, tolerances::MIN_SPEED_KM_S)
}

/// Kinetic half of the equations of motion with an explicit speed floor.
///
/// Newton's law in the `B` basis, `f_tilde/m = v_dot b1 + v (w_EB x b1)`,
/// solved under the no-roll constraint `omega_B1 = 0`:
///
/// ```text
/// v_dot    = ft1/m
/// omega_B2 = -ft3/(m v) - wA2 (1 - 2(eB1^2 + eB3^2)) - 2 wA3 (eB2 eB3 + eB1 etaB)
/// omega_B3 =  ft2/(m v) - 2 wA2 (eB2 eB3 - eB1 etaB) - wA3 (1 - 2(eB1^2 + eB2^2))
/// ```
///
/// The division by `v` reflects a genuine physical singularity — a velocity
/// direction is undefined for a particle at rest — so speeds at or below
/// `v_min` are a domain error rather than a guessed limit.  Note the
/// expressions stay perfectly regular at `eB1 = etaB = 0` (vertical
/// flight), where angle-based formulations blow up.
pub fn kinetic_rates_with_floor(
    state: &RvEulerState,
    f_tilde_over_m: &Vec3,
    omega_a2: f64,
    omega_a3: f64,
    v_min: f64,
) -> Result<KineticRates, Error> {
    if !(state.v.is_finite() && state.v > v_min) {
        return Err(Error::Domain(format!(
            "kinetic rates need speed above {v_min} km/s, got {}",
            state.v
        )));
    }
    let eb = &state.ep_b.eps;
    let nb = state.ep_b.eta;
    let ft = f_tilde_over_m;

    let v_dot = ft.x;
    let omega_b2 = -ft.z / state.v
        - omega_a2 * (1.0 - 2.0 * (eb.x * eb.x + eb.z * eb.z))
        - 2.0 * omega_a3 * (eb.y * eb.z + eb.x * nb);
    let omega_b3 = ft.y / state.v
        - 2.0 * omega_a2 * (eb.y * eb.z - eb.x * nb)
        - omega_a3 * (1.0 - 2.0 * (eb.x * eb.x + eb.y * eb.y));
    let ep_b_rates = euler_param_rates(&state.ep_b, &Vec3::new(0.0, omega_b2, omega_b3));
    Ok(KineticRates { v_dot, omega_b2, omega_b3, ep_b_rates })
}

// ── Assembled state derivative ──────────────────────────────────────────────

/// Full ten-parameter state derivative.
///
/// Chains the force provider, the apparent-force assembly, and the
/// kinematic and kinetic rate equations.  No renormalization happens here;
/// if desired it is applied as a per-step integrator policy so that norm
/// drift of the raw formulation remains observable.
pub fn state_derivative(
    t: f64,
    state: &RvEulerState,
    provider: &dyn ForceProvider,
    frame: &ObservationFrameSpec,
    mass: &MassProperties,
) -> Result<RvEulerRates, Error> {
    state.validate()?;
    let (c_ae, c_ba) = state.dcms()?;
    let force = provider.force(t, state, &c_ae, &c_ba, mass)?;
    let ft = apparent_force_with_dcms(state, &force, frame, mass, &c_ae, &c_ba)?;
    let kin = kinematic_rates(state)?;
    let kin_b = kinetic_rates(state, &ft, kin.omega_a2, kin.omega_a3)?;
    Ok(RvEulerRates {
        r_dot: kin.r_dot,
        ep_a_rates: kin.ep_a_rates,
        v_dot: kin_b.v_dot,
        ep_b_rates: kin_b.ep_b_rates,
        omega_a2: kin.omega_a2,
        omega_a3: kin.omega_a3,
        omega_b2: kin_b.omega_b2,
        omega_b3: kin_b.omega_b3,
    })
}

// ── Shipped force providers ─────────────────────────────────────────────────

/// Inverse-square gravity toward the frame origin.
#[derive(Clone, Copy, Debug)]
pub struct TwoBodyForce {
    /// Gravitational parameter (km³/s²).
    pub mu: f64,
}

impl ForceProvider for TwoBodyForce {
    fn force(
        &self,
        _t: f64,
        state: &RvEulerState,
        _c_ae: &Mat3,
        c_ba: &Mat3,
        mass: &MassProperties,
    ) -> Result<ForceOutput, Error> {
        // Gravity acts along -a1 (the inward radial); in the B basis that
        // direction is the first column of C_BA.
        let scale = -mass.m * self.mu / (state.r * state.r);
        Ok(ForceOutput { f: c_ba.col(0) * scale })
    }
}

/// Gravity-only force provider: `f = -(mu m / r^2) * C_BA(:,1)`.
pub fn two_body_force_provider(mu: f64) -> TwoBodyForce {
    TwoBodyForce { mu }
}

/// Exponential-atmosphere aerodynamic model with linear lift slope and a
/// parabolic drag polar:
///
/// ```text
/// rho = rho0 exp(-(r - surface_radius)/scale_height)
/// q   = rho v^2 / 2
/// C_L = c_l_alpha * alpha          L = q * ref_area * C_L
/// C_D = c_d0 + k_induced * C_L^2   D = q * ref_area * C_D
/// ```
///
/// Units: `rho0` kg/km³ (sea-level air is 1.225e9), lengths km, `ref_area`
/// km², so `L` and `D` come out in kg·km/s² (kN).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AeroModel {
    /// Surface atmospheric density (kg/km³).
    pub rho0: f64,
    /// Exponential scale height (km).
    pub scale_height: f64,
    /// Lift-coefficient slope per radian of angle of attack.
    pub c_l_alpha: f64,
    /// Zero-lift drag coefficient.
    pub c_d0: f64,
    /// Induced-drag factor multiplying C_L².
    pub k_induced: f64,
    /// Aerodynamic reference area (km²).
    pub ref_area: f64,
    /// Radius of the model floor (km); flight below it is a domain error.
    pub surface_radius: f64,
}

impl AeroModel {
    pub fn validate(&self) -> Result<(), Error> {
        let fields = [
            ("rho0", self.rho0),
            ("scale_height", self.scale_height),
            ("ref_area", self.ref_area),
            ("surface_radius", self.surface_radius),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "aero model field {name} must be positive, got {value}"
                )));
            }
        }
        if !(self.c_l_alpha.is_finite() && self.c_d0.is_finite() && self.k_induced.is_finite()) {
            return Err(Error::InvalidInput("aero coefficients must be finite".into()));
        }
        Ok(())
    }

    /// Atmospheric density (kg/km³) at geocentric radius `r` (km).
    pub fn density(&self, r: f64) -> Result<f64, Error> {
        let h = r - self.surface_radius;
        if h < 0.0 {
            return Err(Error::Domain(format!(
                "radius {r} km is below the atmosphere model floor {} km",
                self.surface_radius
            )));
        }
        Ok(self.rho0 * (-h / self.scale_height).exp())
    }

    /// Lift and drag magnitudes (kg·km/s²) at radius `r`, speed `v`, and
    /// angle of attack `alpha` (rad).
    pub fn lift_drag(&self, r: f64, v: f64, alpha: f64) -> Result<(f64, f64), Error> {
        let q = 0.5 * self.density(r)? * v * v;
        let c_l = self.c_l_alpha * alpha;
        let c_d = self.c_d0 + self.k_induced * c_l * c_l;
        Ok((q * self.ref_area * c_l, q * self.ref_area * c_d))
    }
}

/// Piecewise-linear scalar schedule over time, clamped to the first/last
/// value outside the table.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlProfile {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl ControlProfile {
    /// Schedule that holds one value forever.
    pub fn constant(value: f64) -> ControlProfile {
        ControlProfile { times: vec![0.0], values: vec![value] }
    }

    /// Schedule through `(time, value)` knots; times must be finite and
    /// strictly increasing, and at least one knot is required.
    pub fn piecewise_linear(points: &[(f64, f64)]) -> Result<ControlProfile, Error> {
        if points.is_empty() {
            return Err(Error::InvalidInput("control profile needs at least one knot".into()));
        }
        for &(t, v) in points {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::InvalidInput("control profile knots must be finite".into()));
            }
        }
        for window in points.windows(2) {
            if window[1].0 <= window[0].0 {
                return Err(Error::InvalidInput(format!(
                    "control profile times must be strictly increasing: {} then {}",
                    window[0].0, window[1].0
                )));
            }
        }
        Ok(ControlProfile {
            times: points.iter().map(|p| p.0).collect(),
            values: points.iter().map(|p| p.1).collect(),
        })
    }

    /// Interpolated value at `t`, clamped to the table ends.
    pub fn value_at(&self, t: f64) -> f64 {
        let n = self.times.len();
        if t <= self.times[0] {
            return self.values[0];
        }
        if t >= self.times[n - 1] {
            return self.values[n - 1];
        }
        // partition_point returns the first index with time > t; t is
        // strictly inside the table here so 1 <= idx <= n-1.
        let idx = self.times.partition_point(|&knot| knot <= t);
        let (t0, t1) = (self.times[idx - 1], self.times[idx]);
        let (v0, v1) = (self.values[idx - 1], self.values[idx]);
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }
}

/// Lift/drag entry force with inverse-square gravity.
#[derive(Clone, Debug)]
pub struct EntryForce {
    pub aero: AeroModel,
    pub mu: f64,
    pub alpha_profile: ControlProfile,
    pub sigma_profile: ControlProfile,
}

impl ForceProvider for EntryForce {
    fn force(
        &self,
        t: f64,
        state: &RvEulerState,
        _c_ae: &Mat3,
        c_ba: &Mat3,
        mass: &MassProperties,
    ) -> Result<ForceOutput, Error> {
        let alpha = self.alpha_profile.value_at(t);
        let sigma = self.sigma_profile.value_at(t);
        let (lift, drag) = self.aero.lift_drag(state.r, state.v, alpha)?;
        // Drag opposes the E-relative velocity (-b1); lift lies in the
        // plane normal to it, rotated by the bank angle sigma about b1
        // (sigma = 0 puts lift along +b2).
        let aero = Vec3::new(-drag, lift * sigma.cos(), lift * sigma.sin());
        let gravity = c_ba.col(0) * (-mass.m * self.mu / (state.r * state.r));
        Ok(ForceOutput { f: aero + gravity })
    }
}

/// Entry force provider: aerodynamic lift/drag from prescribed
/// angle-of-attack and bank schedules, plus inverse-square gravity.
pub fn entry_force_provider(
    aero: AeroModel,
    mu: f64,
    alpha_profile: ControlProfile,
    sigma_profile: ControlProfile,
) -> Result<EntryForce, Error> {
    aero.validate()?;
    if !(mu.is_finite() && mu >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "gravitational parameter must be non-negative, got {mu}"
        )));
    }
    Ok(EntryForce { aero, mu, alpha_profile, sigma_profile })
}
