//! Fixed-step RK4 propagation, the circular-orbit analytic oracle, position
//! error metrics, and the integration-convergence study.
//!
//! Everything here deliberately uses one integrator — the classical
//! fourth-order Runge-Kutta scheme with a constant step — so that accuracy
//! comparisons between state parameterizations measure the formulations,
//! not integrator heuristics.

use std::f64::consts::TAU;

use crate::error::Error;
use crate::euler_param_core::{normalize, Vec3};
use crate::rv_euler_dynamics::{RvEulerRates, RvEulerState};
use crate::spherical_dynamics::{SphericalRates, SphericalState};
use crate::state_conversion::{
    cartesian_from_rv_euler, cartesian_from_spherical, rv_euler_from_cartesian, CartesianState,
    InitPolicy,
};

// ── Integrable state abstraction ────────────────────────────────────────────

/// A state that can be advanced along weighted rate vectors — the only
/// structure RK4 needs.
pub trait OdeState: Clone {
    type Rates;

    /// `self` displaced by the sum of `coefficient * rates` terms.
    fn advanced(&self, terms: &[(f64, &Self::Rates)]) -> Self;

    /// Optional per-step cleanup (unit-norm restoration for quaternion
    /// states); default is a no-op.
    fn renormalize(&mut self) {}
}

impl OdeState for f64 {
    type Rates = f64;

    fn advanced(&self, terms: &[(f64, &f64)]) -> f64 {
        terms.iter().fold(*self, |acc, (c, d)| acc + c * **d)
    }
}

impl OdeState for RvEulerState {
    type Rates = RvEulerRates;

    fn advanced(&self, terms: &[(f64, &RvEulerRates)]) -> RvEulerState {
        let mut out = *self;
        for (c, d) in terms {
            out.r += c * d.r_dot;
            out.v += c * d.v_dot;
            out.ep_a.eps = out.ep_a.eps + d.ep_a_rates.eps_dot * *c;
            out.ep_a.eta += c * d.ep_a_rates.eta_dot;
            out.ep_b.eps = out.ep_b.eps + d.ep_b_rates.eps_dot * *c;
            out.ep_b.eta += c * d.ep_b_rates.eta_dot;
        }
        out
    }

    fn renormalize(&mut self) {
        if let Ok(ep) = normalize(&self.ep_a) {
            self.ep_a = ep;
        }
        if let Ok(ep) = normalize(&self.ep_b) {
            self.ep_b = ep;
        }
    }
}

impl OdeState for SphericalState {
    type Rates = SphericalRates;

    fn advanced(&self, terms: &[(f64, &SphericalRates)]) -> SphericalState {
        let mut out = *self;
        for (c, d) in terms {
            out.r += c * d.r_dot;
            out.phi += c * d.phi_dot;
            out.theta += c * d.theta_dot;
            out.v += c * d.v_dot;
            out.gamma += c * d.gamma_dot;
            out.psi += c * d.psi_dot;
        }
        out
    }
}

/// A state with a Cartesian position/velocity view, for cross-formulation
/// error metrics.
pub trait CartesianView {
    fn cartesian(&self) -> Result<CartesianState, Error>;
}

impl CartesianView for RvEulerState {
    fn cartesian(&self) -> Result<CartesianState, Error> {
        cartesian_from_rv_euler(self)
    }
}

impl CartesianView for SphericalState {
    fn cartesian(&self) -> Result<CartesianState, Error> {
        cartesian_from_spherical(self)
    }
}

// ── Trajectory and the integrator ───────────────────────────────────────────

/// Uniformly sampled propagation output: `times[k] = t0 + k (tf - t0)/N`
/// with the state at each sample.
#[derive(Clone, Debug)]
pub struct Trajectory<S> {
    pub times: Vec<f64>,
    pub states: Vec<S>,
}

impl<S> Trajectory<S> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_state(&self) -> &S {
        self.states.last().expect("trajectory has at least the initial sample")
    }
}

impl<S: CartesianView> Trajectory<S> {
    /// Cartesian view of every sample.
    pub fn cartesian_states(&self) -> Result<Vec<CartesianState>, Error> {
        self.states.iter().map(|s| s.cartesian()).collect()
    }
}

/// Classical fourth-order Runge-Kutta with a constant step `(tf - t0)/N`.
///
/// Returns `N + 1` samples including both endpoints.  With `renormalize`
/// set, the state's cleanup hook runs after every accepted step (for
/// quaternion states: rescale to unit norm); leave it off to observe the
/// raw formulation's norm drift.
///
/// A derivative error aborts the propagation and carries the failing time.
pub fn rk4_propagate<S, D>(
    mut deriv: D,
    y0: S,
    t0: f64,
    tf: f64,
    n: usize,
    renormalize: bool,
) -> Result<Trajectory<S>, Error>
where
    S: OdeState,
    D: FnMut(f64, &S) -> Result<S::Rates, Error>,
{
    if n == 0 {
        return Err(Error::InvalidInput("step count must be at least 1".into()));
    }
    if !(t0.is_finite() && tf.is_finite()) || tf == t0 {
        return Err(Error::InvalidInput(format!(
            "integration span [{t0}, {tf}] must be finite and nonzero"
        )));
    }
    let h = (tf - t0) / n as f64;
    let mut times = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    times.push(t0);
    states.push(y0.clone());

    let mut y = y0;
    for k in 0..n {
        let t = t0 + k as f64 * h;
        let k1 = deriv(t, &y).map_err(|e| e.at_time(t))?;
        let y2 = y.advanced(&[(0.5 * h, &k1)]);
        let k2 = deriv(t + 0.5 * h, &y2).map_err(|e| e.at_time(t + 0.5 * h))?;
        let y3 = y.advanced(&[(0.5 * h, &k2)]);
        let k3 = deriv(t + 0.5 * h, &y3).map_err(|e| e.at_time(t + 0.5 * h))?;
        let y4 = y.advanced(&[(h, &k3)]);
        let k4 = deriv(t + h, &y4).map_err(|e| e.at_time(t + h))?;
        y = y.advanced(&[(h / 6.0, &k1), (h / 3.0, &k2), (h / 3.0, &k3), (h / 6.0, &k4)]);
        if renormalize {
            y.renormalize();
        }
        times.push(t0 + (k + 1) as f64 * h);
        states.push(y.clone());
    }
    Ok(Trajectory { times, states })
}

// ── Analytic circular orbit ─────────────────────────────────────────────────

/// Parameters of the analytic inclined circular orbit used as the
/// propagation oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitOracleParams {
    /// Orbit radius (km).
    pub radius: f64,
    /// Orbital period (s).
    pub period: f64,
    /// Inclination (rad).
    pub inclination: f64,
}

/// Exact position of the inclined circular orbit at time `t`:
///
/// ```text
/// r*(t) = radius (cos(2 pi t / T),  sin(2 pi t / T) cos i,  -sin(2 pi t / T) sin i)
/// ```
///
/// At `t = 0` the craft sits on the frame's first axis moving toward
/// `(0, cos i, -sin i)`.
pub fn analytic_circular_orbit(t: f64, p: &OrbitOracleParams) -> Vec3 {
    let (s, c) = (TAU * t / p.period).sin_cos();
    Vec3::new(p.radius * c, p.radius * s * p.inclination.cos(), -p.radius * s * p.inclination.sin())
}

/// A circular-orbit experiment definition: everything (speed, period,
/// initial states in all three parameterizations, and the analytic oracle)
/// derives from one `(mu, radius, inclination)` triple, so the integrated
/// problem and the oracle can never drift out of sync through rounded
/// constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircularOrbit {
    /// Gravitational parameter (km³/s²).
    pub mu: f64,
    /// Orbit radius (km).
    pub radius: f64,
    /// Inclination (rad).
    pub inclination: f64,
}

impl CircularOrbit {
    pub fn new(mu: f64, radius: f64, inclination: f64) -> Result<CircularOrbit, Error> {
        if !(mu.is_finite() && mu > 0.0) || !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidInput(format!(
                "circular orbit needs positive mu and radius, got mu = {mu}, radius = {radius}"
            )));
        }
        if !inclination.is_finite() {
            return Err(Error::InvalidInput("inclination must be finite".into()));
        }
        Ok(CircularOrbit { mu, radius, inclination })
    }

    /// Circular speed `sqrt(mu / r)` (km/s).
    pub fn speed(&self) -> f64 {
        (self.mu / self.radius).sqrt()
    }

    /// Orbital period `2 pi sqrt(r^3 / mu)` (s).
    pub fn period(&self) -> f64 {
        TAU * (self.radius.powi(3) / self.mu).sqrt()
    }

    pub fn oracle(&self) -> OrbitOracleParams {
        OrbitOracleParams {
            radius: self.radius,
            period: self.period(),
            inclination: self.inclination,
        }
    }

    /// Initial Cartesian state: on the first axis, moving at circular
    /// speed along the analytic orbit's initial tangent.
    pub fn initial_cartesian(&self) -> CartesianState {
        let v = self.speed();
        CartesianState::new(
            Vec3::new(self.radius, 0.0, 0.0),
            Vec3::new(0.0, v * self.inclination.cos(), -v * self.inclination.sin()),
        )
    }

    /// Initial quaternion state under the orbit-normal frame policy.
    pub fn initial_rv_euler(&self) -> Result<RvEulerState, Error> {
        rv_euler_from_cartesian(&self.initial_cartesian(), &InitPolicy::HAligned)
    }

    /// Initial spherical state.
    pub fn initial_spherical(&self) -> Result<SphericalState, Error> {
        crate::state_conversion::spherical_from_cartesian(&self.initial_cartesian())
    }
}

// ── Error metrics ───────────────────────────────────────────────────────────

/// Position error against the analytic orbit at each sample, plus its
/// maximum over the trajectory.
#[derive(Clone, Debug)]
pub struct ErrorSeries {
    pub times: Vec<f64>,
    pub e_r: Vec<f64>,
    pub e_r_max: f64,
}

/// Error series from raw position samples: `e_r(tk) = |r(tk) - r*(tk)|`.
pub fn position_error_from_positions(
    times: &[f64],
    positions: &[Vec3],
    oracle: &OrbitOracleParams,
) -> ErrorSeries {
    let e_r: Vec<f64> = times
        .iter()
        .zip(positions)
        .map(|(&t, p)| (*p - analytic_circular_orbit(t, oracle)).norm())
        .collect();
    let e_r_max = e_r.iter().copied().fold(0.0, f64::max);
    ErrorSeries { times: times.to_vec(), e_r, e_r_max }
}

/// Error series of a trajectory against the analytic circular orbit.
pub fn position_error_series<S: CartesianView>(
    traj: &Trajectory<S>,
    oracle: &OrbitOracleParams,
) -> Result<ErrorSeries, Error> {
    let positions: Vec<Vec3> = traj.cartesian_states()?.iter().map(|c| c.r_vec).collect();
    Ok(position_error_from_positions(&traj.times, &positions, oracle))
}

// ── Orbit experiment runs ───────────────────────────────────────────────────

/// Which equations of motion carry the propagation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formulation {
    /// Radius/speed + double-quaternion parameterization.
    RvEuler,
    /// Classical spherical-coordinate parameterization.
    Spherical,
}

impl Formulation {
    pub fn label(&self) -> &'static str {
        match self {
            Formulation::RvEuler => "rv-euler",
            Formulation::Spherical => "spherical",
        }
    }
}

/// Propagated trajectory in whichever parameterization carried it.
#[derive(Clone, Debug)]
pub enum TrajectoryData {
    RvEuler(Trajectory<RvEulerState>),
    Spherical(Trajectory<SphericalState>),
}

impl TrajectoryData {
    pub fn times(&self) -> &[f64] {
        match self {
            TrajectoryData::RvEuler(t) => &t.times,
            TrajectoryData::Spherical(t) => &t.times,
        }
    }

    pub fn cartesian_states(&self) -> Result<Vec<CartesianState>, Error> {
        match self {
            TrajectoryData::RvEuler(t) => t.cartesian_states(),
            TrajectoryData::Spherical(t) => t.cartesian_states(),
        }
    }

    pub fn error_series(&self, oracle: &OrbitOracleParams) -> Result<ErrorSeries, Error> {
        match self {
            TrajectoryData::RvEuler(t) => position_error_series(t, oracle),
            TrajectoryData::Spherical(t) => position_error_series(t, oracle),
        }
    }
}

/// Propagates the circular-orbit problem for one period with `n` steps in
/// the chosen formulation (inertial frame, gravity only).
pub fn run_circular_orbit(
    orbit: &CircularOrbit,
    formulation: Formulation,
    n: usize,
    renormalize: bool,
) -> Result<TrajectoryData, Error> {
    run_orbit_span(orbit, formulation, 0.0, orbit.period(), n, renormalize)
}

/// [`run_circular_orbit`] over an explicit time span.
pub fn run_orbit_span(
    orbit: &CircularOrbit,
    formulation: Formulation,
    t0: f64,
    tf: f64,
    n: usize,
    renormalize: bool,
) -> Result<TrajectoryData, Error> {
    match formulation {
        Formulation::RvEuler => {
            let provider = crate::rv_euler_dynamics::two_body_force_provider(orbit.mu);
            let frame = crate::rv_euler_dynamics::ObservationFrameSpec::INERTIAL;
            let mass = crate::rv_euler_dynamics::MassProperties::new(1.0);
            let y0 = orbit.initial_rv_euler()?;
            let traj = rk4_propagate(
                |t, y: &RvEulerState| {
                    crate::rv_euler_dynamics::state_derivative(t, y, &provider, &frame, &mass)
                },
                y0,
                t0,
                tf,
                n,
                renormalize,
            )?;
            Ok(TrajectoryData::RvEuler(traj))
        }
        Formulation::Spherical => {
            let mu = orbit.mu;
            let y0 = orbit.initial_spherical()?;
            let traj = rk4_propagate(
                |_t, y: &SphericalState| crate::spherical_dynamics::two_body_spherical_rates(y, mu),
                y0,
                t0,
                tf,
                n,
                renormalize,
            )?;
            Ok(TrajectoryData::Spherical(traj))
        }
    }
}

// ── Convergence study ───────────────────────────────────────────────────────

/// One row of the convergence study: the peak position error of a
/// formulation at a step count, or the failure that prevented it.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub formulation: Formulation,
    pub n: usize,
    pub e_r_max: Option<f64>,
    pub failure: Option<String>,
}

/// Step-count bounds accepted by [`convergence_study`].
pub const CONVERGENCE_N_RANGE: (usize, usize) = (10, 1_000_000);

/// Sweeps the circular-orbit problem over step counts for each
/// formulation, one period per run, recording `e_r_max` per row.
///
/// A failing row (step count out of range, or a propagation error such as
/// the spherical formulation hitting its pole guard) is recorded with its
/// message and the study continues.
pub fn convergence_study(
    orbit: &CircularOrbit,
    formulations: &[Formulation],
    ns: &[usize],
) -> Vec<ConvergenceRow> {
    let oracle = orbit.oracle();
    let mut rows = Vec::with_capacity(formulations.len() * ns.len());
    for &formulation in formulations {
        for &n in ns {
            if n < CONVERGENCE_N_RANGE.0 || n > CONVERGENCE_N_RANGE.1 {
                rows.push(ConvergenceRow {
                    formulation,
                    n,
                    e_r_max: None,
                    failure: Some(format!(
                        "step count {n} outside [{}, {}]",
                        CONVERGENCE_N_RANGE.0, CONVERGENCE_N_RANGE.1
                    )),
                });
                continue;
            }
            let outcome = run_circular_orbit(orbit, formulation, n, false)
                .and_then(|traj| traj.error_series(&oracle));
            match outcome {
                Ok(series) => rows.push(ConvergenceRow {
                    formulation,
                    n,
                    e_r_max: Some(series.e_r_max),
                    failure: None,
                }),
                Err(err) => rows.push(ConvergenceRow {
                    formulation,
                    n,
                    e_r_max: None,
                    failure: Some(err.to_string()),
                }),
            }
        }
    }
    rows
}

/// `count` logarithmically spaced integers over `[lo, hi]`, deduplicated
/// and ascending.
pub fn log_spaced_steps(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    if count == 0 || lo == 0 {
        return Vec::new();
    }
    if count == 1 || lo == hi {
        return vec![lo];
    }
    let (llo, lhi) = ((lo as f64).ln(), (hi as f64).ln());
    let mut out: Vec<usize> = (0..count)
        .map(|i| {
            let f = i as f64 / (count - 1) as f64;
            (llo + f * (lhi - llo)).exp().round() as usize
        })
        .collect();
    out.dedup();
    out
}
