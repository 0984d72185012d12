//! Scenario runner: configuration-driven experiments over the dynamics
//! library, plus deterministic CSV/JSON reporting for the command-line
//! front end.
//!
//! Four run kinds are supported:
//!
//! * **orbit** — one period of a circular orbit in one formulation, with
//!   the position-error series against the analytic solution;
//! * **convergence** — the same problem swept over step counts;
//! * **entry** — rotating-frame atmospheric entry under prescribed
//!   angle-of-attack and bank schedules, with a path-constraint series and
//!   terminal diagnostics;
//! * **compare** — two orbit propagations and their Cartesian difference
//!   series.
//!
//! Everything here is deterministic: rerunning a scenario writes
//! byte-identical output files.

pub mod config;
pub mod output;

pub use config::{FormulationChoice, ScenarioConfig, ScenarioKind};

use crate::error::Error;
use crate::euler_param_core::EulerParams;
use crate::propagation::{
    convergence_study, rk4_propagate, run_circular_orbit, ConvergenceRow, ErrorSeries, Formulation,
    Trajectory, TrajectoryData,
};
use crate::rv_euler_dynamics::{
    entry_force_provider, state_derivative, MassProperties, ObservationFrameSpec, RvEulerState,
};
use crate::spherical_dynamics::{entry_spherical_rates, EntryForcing, SphericalState};
use crate::state_conversion::{
    cartesian_from_rv_euler, cartesian_from_spherical, rv_euler_from_cartesian, CartesianState,
    InitPolicy,
};

/// Scenario-level failure, mapped onto process exit codes by the CLI.
#[derive(Debug)]
pub enum ScenarioError {
    /// The configuration is unusable (parse failure, invalid field,
    /// inconsistent sections).  Exit code 2.
    Config(String),
    /// The simulation itself left the model's domain; carries the
    /// simulation time at which evaluation failed when one is known.
    /// Exit code 3.
    Dynamics { time: Option<f64>, message: String },
    /// Filesystem failure while writing results.  Exit code 1.
    Io(String),
}

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScenarioError::Config(msg) => write!(f, "configuration error: {msg}"),
            ScenarioError::Dynamics { message, .. } => write!(f, "dynamics error: {message}"),
            ScenarioError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

impl ScenarioError {
    /// Process exit code for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Io(_) => 1,
            ScenarioError::Config(_) => 2,
            ScenarioError::Dynamics { .. } => 3,
        }
    }

    /// Simulation time at which a dynamics failure occurred, if known.
    pub fn failing_time(&self) -> Option<f64> {
        match self {
            ScenarioError::Dynamics { time, .. } => *time,
            _ => None,
        }
    }
}

fn dynamics_err(e: Error) -> ScenarioError {
    ScenarioError::Dynamics { time: e.failing_time(), message: e.to_string() }
}

impl From<std::io::Error> for ScenarioError {
    fn from(e: std::io::Error) -> Self {
        ScenarioError::Io(e.to_string())
    }
}

/// One time sample with every quantity the trajectory output needs: the
/// ten-parameter state plus its Cartesian image.
#[derive(Clone, Debug)]
pub struct TrajectorySample {
    pub t: f64,
    pub r: f64,
    pub v: f64,
    pub ep_a: EulerParams,
    pub ep_b: EulerParams,
    pub cart: CartesianState,
}

impl TrajectorySample {
    pub fn is_finite(&self) -> bool {
        self.t.is_finite()
            && self.r.is_finite()
            && self.v.is_finite()
            && self.ep_a.is_finite()
            && self.ep_b.is_finite()
            && self.cart.r_vec.is_finite()
            && self.cart.v_vec.is_finite()
    }
}

/// One propagated trajectory plus its oracle error series when one exists.
#[derive(Clone, Debug)]
pub struct TrajectoryLeg {
    pub formulation: Formulation,
    pub samples: Vec<TrajectorySample>,
    pub error_series: Option<ErrorSeries>,
}

/// One path-constraint sample of an entry run.  Angles are degrees here
/// (this is reporting, not dynamics).
#[derive(Clone, Debug)]
pub struct ConstraintSample {
    pub t: f64,
    /// sqrt(L² + D²)/m (km/s²).
    pub aero_load: f64,
    /// Dynamic pressure (kg/(km·s²)).
    pub q: f64,
    pub alpha_deg: f64,
    pub sigma_deg: f64,
}

/// Entry path-constraint extremes checked against the configured limits.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConstraintSummary {
    pub max_aero_load: f64,
    pub a_max: f64,
    pub aero_load_ok: bool,
    pub min_q: f64,
    pub q_min: f64,
    pub q_ok: bool,
    pub min_alpha_deg: f64,
    pub max_alpha_deg: f64,
    pub alpha_limit_deg: f64,
    pub alpha_ok: bool,
    pub max_alpha_rate_deg: f64,
    pub alpha_rate_limit_deg: f64,
    pub alpha_rate_ok: bool,
    pub max_sigma_rate_deg: f64,
    pub sigma_rate_limit_deg: f64,
    pub sigma_rate_ok: bool,
}

impl ConstraintSummary {
    pub fn all_ok(&self) -> bool {
        self.aero_load_ok && self.q_ok && self.alpha_ok && self.alpha_rate_ok && self.sigma_rate_ok
    }
}

/// Terminal-state diagnostics of an entry run: the velocity-frame
/// parameters that encode the flight-path geometry at final time, and the
/// longitude/latitude residuals against the configured target.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TerminalDiagnostics {
    pub t: f64,
    pub radius: f64,
    pub speed: f64,
    pub eps_b1: f64,
    pub eta_b: f64,
    pub gamma_deg: f64,
    pub longitude_deg: f64,
    pub latitude_deg: f64,
    pub longitude_residual_deg: f64,
    pub latitude_residual_deg: f64,
}

/// Cartesian difference series between the two legs of a compare run.
#[derive(Clone, Debug)]
pub struct ComparisonSeries {
    pub times: Vec<f64>,
    pub delta_r: Vec<f64>,
    pub delta_v: Vec<f64>,
    pub max_delta_r: f64,
    pub max_delta_v: f64,
}

/// Everything a finished scenario produced.  The output module turns this
/// into CSV files and a JSON summary.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub kind: ScenarioKind,
    pub formulation: FormulationChoice,
    pub steps: usize,
    pub renormalize: bool,
    pub t_final: f64,
    /// Propagated trajectories: one for orbit/entry, two for compare,
    /// none for convergence.
    pub legs: Vec<TrajectoryLeg>,
    pub convergence: Vec<ConvergenceRow>,
    pub constraints: Vec<ConstraintSample>,
    pub constraint_summary: Option<ConstraintSummary>,
    pub comparison: Option<ComparisonSeries>,
    pub terminal: Option<TerminalDiagnostics>,
}

impl RunReport {
    fn new(config: &ScenarioConfig, t_final: f64) -> RunReport {
        RunReport {
            kind: config.scenario.kind,
            formulation: config.scenario.formulation,
            steps: config.integrator.steps,
            renormalize: config.integrator.renormalize,
            t_final,
            legs: Vec::new(),
            convergence: Vec::new(),
            constraints: Vec::new(),
            constraint_summary: None,
            comparison: None,
            terminal: None,
        }
    }
}

// ── Sample assembly ─────────────────────────────────────────────────────────

fn samples_from_rv(traj: &Trajectory<RvEulerState>) -> Result<Vec<TrajectorySample>, Error> {
    traj.times
        .iter()
        .zip(&traj.states)
        .map(|(&t, s)| {
            let cart = cartesian_from_rv_euler(s).map_err(|e| e.at_time(t))?;
            Ok(TrajectorySample { t, r: s.r, v: s.v, ep_a: s.ep_a, ep_b: s.ep_b, cart })
        })
        .collect()
}

/// Spherical samples carry no frame parameters of their own; the reported
/// quaternion columns are the h-aligned image of each sample so the two
/// formulations share one trajectory schema.
fn samples_from_spherical(
    traj: &Trajectory<SphericalState>,
) -> Result<Vec<TrajectorySample>, Error> {
    traj.times
        .iter()
        .zip(&traj.states)
        .map(|(&t, s)| {
            let cart = cartesian_from_spherical(s).map_err(|e| e.at_time(t))?;
            let rv =
                rv_euler_from_cartesian(&cart, &InitPolicy::HAligned).map_err(|e| e.at_time(t))?;
            Ok(TrajectorySample { t, r: s.r, v: s.v, ep_a: rv.ep_a, ep_b: rv.ep_b, cart })
        })
        .collect()
}

fn samples_from_data(data: &TrajectoryData) -> Result<Vec<TrajectorySample>, Error> {
    match data {
        TrajectoryData::RvEuler(t) => samples_from_rv(t),
        TrajectoryData::Spherical(t) => samples_from_spherical(t),
    }
}

// ── Run operations ──────────────────────────────────────────────────────────

/// One period of the configured circular orbit in a single formulation,
/// with the position-error series against the analytic solution.
pub fn run_orbit(config: &ScenarioConfig) -> Result<RunReport, ScenarioError> {
    config.validate()?;
    let orbit = config.circular_orbit()?;
    let formulation = config.scenario.formulation.single().ok_or_else(|| {
        ScenarioError::Config("orbit runs one formulation; use compare for both".into())
    })?;
    let data = run_circular_orbit(
        &orbit,
        formulation,
        config.integrator.steps,
        config.integrator.renormalize,
    )
    .map_err(dynamics_err)?;
    let error_series = data.error_series(&orbit.oracle()).map_err(dynamics_err)?;
    let samples = samples_from_data(&data).map_err(dynamics_err)?;

    let mut report = RunReport::new(config, orbit.period());
    report.legs.push(TrajectoryLeg { formulation, samples, error_series: Some(error_series) });
    Ok(report)
}

/// Step-count sweep of the orbit problem.  Individual failures (for
/// example a step count outside the supported range) become failure rows,
/// not errors, so a sweep always completes.
pub fn run_convergence(config: &ScenarioConfig) -> Result<RunReport, ScenarioError> {
    config.validate()?;
    let orbit = config.circular_orbit()?;
    let formulations = config.scenario.formulation.list();
    let ns = config.convergence_steps();
    if ns.is_empty() {
        return Err(ScenarioError::Config("convergence sweep has an empty step-count list".into()));
    }
    let mut report = RunReport::new(config, orbit.period());
    report.convergence = convergence_study(&orbit, &formulations, &ns);
    Ok(report)
}

/// Rotating-frame atmospheric entry under the configured control
/// schedules, with the per-sample path-constraint series and terminal
/// diagnostics.
pub fn run_entry(config: &ScenarioConfig) -> Result<RunReport, ScenarioError> {
    config.validate()?;
    let constants = &config.constants;
    let entry = &config.entry;
    let aero = entry.aero_model(constants.surface_radius);
    let alpha = entry.alpha_profile()?;
    let sigma = entry.sigma_profile()?;
    let mass = MassProperties::new(entry.mass);
    let formulation = config.scenario.formulation.single().ok_or_else(|| {
        ScenarioError::Config("entry runs one formulation (rv-euler or spherical)".into())
    })?;

    let samples = match formulation {
        Formulation::RvEuler => {
            let state0 = config.initial_state.to_rv_euler()?;
            let provider = entry_force_provider(aero, constants.mu, alpha.clone(), sigma.clone())
                .map_err(|e| ScenarioError::Config(e.to_string()))?;
            let frame = ObservationFrameSpec::spinning_z(constants.omega_e);
            let traj = rk4_propagate(
                |t, s: &RvEulerState| state_derivative(t, s, &provider, &frame, &mass),
                state0,
                0.0,
                entry.t_final,
                config.integrator.steps,
                config.integrator.renormalize,
            )
            .map_err(dynamics_err)?;
            samples_from_rv(&traj).map_err(dynamics_err)?
        }
        Formulation::Spherical => {
            let state0 = config.initial_state.to_spherical()?;
            let deriv = |t: f64, s: &SphericalState| {
                let (lift, drag) = aero.lift_drag(s.r, s.v, alpha.value_at(t))?;
                // The configured bank is measured in the velocity frame,
                // whose second axis points from the flight path toward the
                // planet (for h-aligned geometry).  The classical entry
                // equations measure bank from the lift-up direction, half a
                // turn away, so the spherical leg shifts the schedule by pi.
                let forcing = EntryForcing {
                    lift,
                    drag,
                    sigma: sigma.value_at(t) + std::f64::consts::PI,
                    mass: entry.mass,
                };
                entry_spherical_rates(s, &forcing, constants.mu, constants.omega_e)
            };
            let traj =
                rk4_propagate(deriv, state0, 0.0, entry.t_final, config.integrator.steps, false)
                    .map_err(dynamics_err)?;
            samples_from_spherical(&traj).map_err(dynamics_err)?
        }
    };

    // Path-constraint series over the accepted samples.  The propagator
    // never evaluates dynamics at the final state, so a terminal sample
    // below the atmosphere floor is caught here instead.
    let mut constraints = Vec::with_capacity(samples.len());
    for s in &samples {
        let alpha_t = alpha.value_at(s.t);
        let sigma_t = sigma.value_at(s.t);
        let q = 0.5 * aero.density(s.r).map_err(|e| dynamics_err(e.at_time(s.t)))? * s.v * s.v;
        let (lift, drag) =
            aero.lift_drag(s.r, s.v, alpha_t).map_err(|e| dynamics_err(e.at_time(s.t)))?;
        constraints.push(ConstraintSample {
            t: s.t,
            aero_load: lift.hypot(drag) / entry.mass,
            q,
            alpha_deg: alpha_t.to_degrees(),
            sigma_deg: sigma_t.to_degrees(),
        });
    }

    let max_aero_load = constraints.iter().map(|c| c.aero_load).fold(0.0, f64::max);
    let min_q = constraints.iter().map(|c| c.q).fold(f64::INFINITY, f64::min);
    let min_alpha_deg = constraints.iter().map(|c| c.alpha_deg).fold(f64::INFINITY, f64::min);
    let max_alpha_deg = constraints.iter().map(|c| c.alpha_deg).fold(f64::NEG_INFINITY, f64::max);
    let max_alpha_rate_deg = config::EntrySection::max_rate_deg(&entry.alpha_profile_deg);
    let max_sigma_rate_deg = config::EntrySection::max_rate_deg(&entry.sigma_profile_deg);
    let summary = ConstraintSummary {
        max_aero_load,
        a_max: entry.a_max,
        aero_load_ok: max_aero_load <= entry.a_max,
        min_q,
        q_min: entry.q_min,
        q_ok: min_q >= entry.q_min,
        min_alpha_deg,
        max_alpha_deg,
        alpha_limit_deg: entry.alpha_max_deg,
        alpha_ok: min_alpha_deg >= 0.0 && max_alpha_deg <= entry.alpha_max_deg,
        max_alpha_rate_deg,
        alpha_rate_limit_deg: entry.alpha_rate_max_deg,
        alpha_rate_ok: max_alpha_rate_deg <= entry.alpha_rate_max_deg,
        max_sigma_rate_deg,
        sigma_rate_limit_deg: entry.sigma_rate_max_deg,
        sigma_rate_ok: max_sigma_rate_deg <= entry.sigma_rate_max_deg,
    };

    let last = samples.last().expect("propagation yields at least the initial sample");
    let r_hat = last.cart.r_vec * (1.0 / last.cart.r_vec.norm());
    let v_norm = last.cart.v_vec.norm();
    let gamma_deg = if v_norm > 0.0 {
        (last.cart.v_vec.dot(&r_hat) / v_norm).clamp(-1.0, 1.0).asin().to_degrees()
    } else {
        f64::NAN
    };
    let longitude_deg = last.cart.r_vec.y.atan2(last.cart.r_vec.x).to_degrees();
    let latitude_deg = r_hat.z.clamp(-1.0, 1.0).asin().to_degrees();
    let terminal = TerminalDiagnostics {
        t: last.t,
        radius: last.r,
        speed: last.v,
        eps_b1: last.ep_b.eps.x,
        eta_b: last.ep_b.eta,
        gamma_deg,
        longitude_deg,
        latitude_deg,
        longitude_residual_deg: longitude_deg - entry.target_longitude_deg,
        latitude_residual_deg: latitude_deg - entry.target_latitude_deg,
    };

    let mut report = RunReport::new(config, entry.t_final);
    report.legs.push(TrajectoryLeg { formulation, samples, error_series: None });
    report.constraints = constraints;
    report.constraint_summary = Some(summary);
    report.terminal = Some(terminal);
    Ok(report)
}

/// Two orbit propagations and their Cartesian difference series.  With
/// `formulation = "both"` the legs are the two formulations; with a single
/// formulation both legs run it (the difference is then exactly zero,
/// which makes the pipeline itself testable).
pub fn run_compare(config: &ScenarioConfig) -> Result<RunReport, ScenarioError> {
    config.validate()?;
    let orbit = config.circular_orbit()?;
    let (fa, fb) = match config.scenario.formulation {
        FormulationChoice::Both => (Formulation::RvEuler, Formulation::Spherical),
        FormulationChoice::RvEuler => (Formulation::RvEuler, Formulation::RvEuler),
        FormulationChoice::Spherical => (Formulation::Spherical, Formulation::Spherical),
    };
    let n = config.integrator.steps;
    let renorm = config.integrator.renormalize;
    let oracle = orbit.oracle();

    let mut legs = Vec::with_capacity(2);
    let mut carts: Vec<Vec<CartesianState>> = Vec::with_capacity(2);
    for f in [fa, fb] {
        let data = run_circular_orbit(&orbit, f, n, renorm).map_err(dynamics_err)?;
        let error_series = data.error_series(&oracle).map_err(dynamics_err)?;
        let samples = samples_from_data(&data).map_err(dynamics_err)?;
        carts.push(samples.iter().map(|s| s.cart).collect());
        legs.push(TrajectoryLeg { formulation: f, samples, error_series: Some(error_series) });
    }

    let times: Vec<f64> = legs[0].samples.iter().map(|s| s.t).collect();
    let delta_r: Vec<f64> =
        carts[0].iter().zip(&carts[1]).map(|(a, b)| (a.r_vec - b.r_vec).norm()).collect();
    let delta_v: Vec<f64> =
        carts[0].iter().zip(&carts[1]).map(|(a, b)| (a.v_vec - b.v_vec).norm()).collect();
    let max_delta_r = delta_r.iter().copied().fold(0.0, f64::max);
    let max_delta_v = delta_v.iter().copied().fold(0.0, f64::max);

    let mut report = RunReport::new(config, orbit.period());
    report.legs = legs;
    report.comparison =
        Some(ComparisonSeries { times, delta_r, delta_v, max_delta_r, max_delta_v });
    Ok(report)
}

/// Dispatches on the configured scenario kind.
pub fn execute(config: &ScenarioConfig) -> Result<RunReport, ScenarioError> {
    match config.scenario.kind {
        ScenarioKind::Orbit => run_orbit(config),
        ScenarioKind::Convergence => run_convergence(config),
        ScenarioKind::Entry => run_entry(config),
        ScenarioKind::Compare => run_compare(config),
    }
}
