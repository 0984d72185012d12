//! Scenario configuration: the TOML schema, defaults, validation, and the
//! mapping onto domain types.
//!
//! All angles in configuration files are degrees (matching how such values
//! are usually tabulated); they are converted to radians exactly once, in
//! the accessor methods here.  Lengths are km, times s, speeds km/s,
//! masses kg.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::euler_param_core::{EulerParams, Mat3, Vec3};
use crate::propagation::{CircularOrbit, Formulation};
use crate::rv_euler_dynamics::{AeroModel, ControlProfile, RvEulerState};
use crate::scenarios_cli::ScenarioError;
use crate::spherical_dynamics::SphericalState;
use crate::state_conversion::{
    cartesian_from_spherical, rv_euler_from_cartesian, CartesianState, InitPolicy,
};

/// Which experiment a run executes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    /// One-period circular-orbit propagation with the analytic error series.
    Orbit,
    /// Step-count sweep of the orbit problem.
    Convergence,
    /// Rotating-frame atmospheric entry with prescribed controls.
    Entry,
    /// Both formulations on the orbit problem, with a difference series.
    Compare,
}

impl ScenarioKind {
    pub fn label(&self) -> &'static str {
        match self {
            ScenarioKind::Orbit => "orbit",
            ScenarioKind::Convergence => "convergence",
            ScenarioKind::Entry => "entry",
            ScenarioKind::Compare => "compare",
        }
    }
}

/// Formulation selector; `Both` is valid for convergence and compare runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulationChoice {
    RvEuler,
    Spherical,
    Both,
}

impl FormulationChoice {
    pub fn single(&self) -> Option<Formulation> {
        match self {
            FormulationChoice::RvEuler => Some(Formulation::RvEuler),
            FormulationChoice::Spherical => Some(Formulation::Spherical),
            FormulationChoice::Both => None,
        }
    }

    pub fn list(&self) -> Vec<Formulation> {
        match self {
            FormulationChoice::RvEuler => vec![Formulation::RvEuler],
            FormulationChoice::Spherical => vec![Formulation::Spherical],
            FormulationChoice::Both => vec![Formulation::RvEuler, Formulation::Spherical],
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FormulationChoice::RvEuler => "rv-euler",
            FormulationChoice::Spherical => "spherical",
            FormulationChoice::Both => "both",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioSection {
    pub kind: ScenarioKind,
    pub formulation: FormulationChoice,
}

impl Default for ScenarioSection {
    fn default() -> Self {
        ScenarioSection { kind: ScenarioKind::Orbit, formulation: FormulationChoice::RvEuler }
    }
}

/// Physical constants.  The defaults are standard Earth values; they are
/// configuration, not code, so other bodies and unit checks are possible.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConstantsSection {
    /// Gravitational parameter (km³/s²).
    pub mu: f64,
    /// Planet spin rate (rad/s) about the frame's third axis.
    pub omega_e: f64,
    /// Planet surface radius (km); also the atmosphere-model floor.
    pub surface_radius: f64,
}

impl Default for ConstantsSection {
    fn default() -> Self {
        ConstantsSection { mu: 398600.4418, omega_e: 7.292115e-5, surface_radius: 6378.0 }
    }
}

/// Circular-orbit experiment geometry (orbit, convergence, and compare
/// kinds).  Initial conditions and the analytic oracle both derive from
/// these two numbers plus `constants.mu`, which keeps the integrated
/// problem and the oracle consistent by construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OrbitSection {
    /// Orbit radius (km).
    pub radius: f64,
    /// Inclination (degrees).
    pub inclination_deg: f64,
}

impl Default for OrbitSection {
    fn default() -> Self {
        OrbitSection { radius: 6971.0, inclination_deg: 97.777 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegratorSection {
    /// Step count for single propagations.
    pub steps: usize,
    /// Rescale quaternions to unit norm after every step.
    pub renormalize: bool,
    /// Explicit step-count list for convergence sweeps; when empty, a
    /// log-spaced list is generated from the three fields below.
    pub convergence_steps: Vec<usize>,
    pub convergence_min: usize,
    pub convergence_max: usize,
    pub convergence_points: usize,
}

impl Default for IntegratorSection {
    fn default() -> Self {
        IntegratorSection {
            steps: 1000,
            renormalize: false,
            convergence_steps: Vec::new(),
            convergence_min: 10,
            convergence_max: 100_000,
            convergence_points: 30,
        }
    }
}

/// Spherical initial state (angles in degrees).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphericalInit {
    pub r: f64,
    pub phi_deg: f64,
    pub theta_deg: f64,
    pub v: f64,
    pub gamma_deg: f64,
    pub psi_deg: f64,
}

impl SphericalInit {
    pub fn to_state(&self) -> SphericalState {
        SphericalState {
            r: self.r,
            phi: self.phi_deg.to_radians(),
            theta: self.theta_deg.to_radians(),
            v: self.v,
            gamma: self.gamma_deg.to_radians(),
            psi: self.psi_deg.to_radians(),
        }
    }
}

/// Cartesian initial state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CartesianInit {
    pub r_vec: [f64; 3],
    pub v_vec: [f64; 3],
}

impl CartesianInit {
    pub fn to_state(&self) -> CartesianState {
        CartesianState::new(Vec3::from_array(self.r_vec), Vec3::from_array(self.v_vec))
    }
}

/// Ten-parameter initial state given directly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RvEulerInit {
    pub r: f64,
    pub eps_a: [f64; 3],
    pub eta_a: f64,
    pub v: f64,
    pub eps_b: [f64; 3],
    pub eta_b: f64,
}

impl RvEulerInit {
    pub fn to_state(&self) -> RvEulerState {
        RvEulerState {
            r: self.r,
            ep_a: EulerParams { eps: Vec3::from_array(self.eps_a), eta: self.eta_a },
            v: self.v,
            ep_b: EulerParams { eps: Vec3::from_array(self.eps_b), eta: self.eta_b },
        }
    }
}

/// Frame-completion policy names for the config file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyChoice {
    HAligned,
    Custom,
}

/// Initial state for entry runs: exactly one representation must be
/// present.  The default is the reference entry point — 37 km above the
/// surface on the equator, 7.138 km/s due east, level flight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitialStateSection {
    pub spherical: Option<SphericalInit>,
    pub cartesian: Option<CartesianInit>,
    pub rv_euler: Option<RvEulerInit>,
    pub policy: PolicyChoice,
    /// Row-major `C_AE` seed for the custom policy.
    pub custom_seed: Option<[[f64; 3]; 3]>,
}

impl Default for InitialStateSection {
    fn default() -> Self {
        InitialStateSection {
            spherical: Some(SphericalInit {
                r: 6415.0,
                phi_deg: 0.0,
                theta_deg: 0.0,
                v: 7.138,
                gamma_deg: 0.0,
                psi_deg: 90.0,
            }),
            cartesian: None,
            rv_euler: None,
            policy: PolicyChoice::HAligned,
            custom_seed: None,
        }
    }
}

impl InitialStateSection {
    fn representation_count(&self) -> usize {
        [self.spherical.is_some(), self.cartesian.is_some(), self.rv_euler.is_some()]
            .iter()
            .filter(|&&p| p)
            .count()
    }

    pub fn policy(&self) -> Result<InitPolicy, ScenarioError> {
        match self.policy {
            PolicyChoice::HAligned => Ok(InitPolicy::HAligned),
            PolicyChoice::Custom => {
                let seed = self.custom_seed.ok_or_else(|| {
                    ScenarioError::Config(
                        "initial_state.policy = \"custom\" requires initial_state.custom_seed"
                            .into(),
                    )
                })?;
                Ok(InitPolicy::Custom(Mat3(seed)))
            }
        }
    }

    /// The configured state as a ten-parameter quaternion state.
    pub fn to_rv_euler(&self) -> Result<RvEulerState, ScenarioError> {
        let state = if let Some(rv) = &self.rv_euler {
            rv.to_state()
        } else if let Some(c) = &self.cartesian {
            rv_euler_from_cartesian(&c.to_state(), &self.policy()?).map_err(config_err)?
        } else if let Some(s) = &self.spherical {
            rv_euler_from_cartesian(
                &cartesian_from_spherical(&s.to_state()).map_err(config_err)?,
                &self.policy()?,
            )
            .map_err(config_err)?
        } else {
            return Err(ScenarioError::Config(
                "initial_state must provide one of: spherical, cartesian, rv_euler".into(),
            ));
        };
        state.validate_strict().map_err(config_err)?;
        Ok(state)
    }

    /// The configured state as a spherical state.
    pub fn to_spherical(&self) -> Result<SphericalState, ScenarioError> {
        if let Some(s) = &self.spherical {
            let state = s.to_state();
            state.validate().map_err(config_err)?;
            Ok(state)
        } else if let Some(c) = &self.cartesian {
            crate::state_conversion::spherical_from_cartesian(&c.to_state()).map_err(config_err)
        } else if let Some(rv) = &self.rv_euler {
            crate::state_conversion::spherical_from_rv_euler(&rv.to_state()).map_err(config_err)
        } else {
            Err(ScenarioError::Config(
                "initial_state must provide one of: spherical, cartesian, rv_euler".into(),
            ))
        }
    }
}

/// Aerodynamic coefficients for the entry model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AeroSection {
    /// Surface atmospheric density (kg/km³).
    pub rho0: f64,
    /// Exponential scale height (km).
    pub scale_height: f64,
    /// Lift slope per radian.
    pub c_l_alpha: f64,
    /// Zero-lift drag coefficient.
    pub c_d0: f64,
    /// Induced-drag factor.
    pub k_induced: f64,
    /// Reference area (km²).
    pub ref_area: f64,
}

impl Default for AeroSection {
    fn default() -> Self {
        AeroSection {
            rho0: 1.225e9,
            scale_height: 7.5,
            c_l_alpha: 1.5,
            c_d0: 0.3,
            k_induced: 1.2,
            ref_area: 3.0e-7,
        }
    }
}

/// Entry-run parameters: vehicle, controls, span, path-constraint limits,
/// and the terminal target.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EntrySection {
    /// Vehicle mass (kg).
    pub mass: f64,
    /// Simulated span (s), starting at t = 0.
    pub t_final: f64,
    /// Angle-of-attack schedule: `[time_s, alpha_deg]` knots,
    /// piecewise-linear, clamped outside the table.
    pub alpha_profile_deg: Vec<[f64; 2]>,
    /// Bank-angle schedule: `[time_s, sigma_deg]` knots.  Zero bank points
    /// the lift along the velocity frame's second axis; at the reference
    /// entry state that axis points toward the planet, so 180 degrees is
    /// lift-up.
    pub sigma_profile_deg: Vec<[f64; 2]>,
    /// Aerodynamic load limit (km/s²) on sqrt(L² + D²)/m.
    pub a_max: f64,
    /// Dynamic-pressure floor (kg/(km·s²)).
    pub q_min: f64,
    /// Angle-of-attack ceiling (degrees); the floor is 0.
    pub alpha_max_deg: f64,
    /// Control-rate limits (degrees/s) checked against the profiles.
    pub alpha_rate_max_deg: f64,
    pub sigma_rate_max_deg: f64,
    /// Terminal target longitude/latitude (degrees).
    pub target_longitude_deg: f64,
    pub target_latitude_deg: f64,
    pub aero: AeroSection,
}

impl Default for EntrySection {
    fn default() -> Self {
        EntrySection {
            mass: 1000.0,
            t_final: 450.0,
            alpha_profile_deg: vec![[0.0, 4.0]],
            sigma_profile_deg: vec![[0.0, 180.0]],
            a_max: 0.04,
            q_min: 1.0e7,
            alpha_max_deg: 40.0,
            alpha_rate_max_deg: 5.0,
            sigma_rate_max_deg: 15.0,
            target_longitude_deg: 25.15,
            target_latitude_deg: 0.0,
            aero: AeroSection::default(),
        }
    }
}

impl EntrySection {
    pub fn aero_model(&self, surface_radius: f64) -> AeroModel {
        AeroModel {
            rho0: self.aero.rho0,
            scale_height: self.aero.scale_height,
            c_l_alpha: self.aero.c_l_alpha,
            c_d0: self.aero.c_d0,
            k_induced: self.aero.k_induced,
            ref_area: self.aero.ref_area,
            surface_radius,
        }
    }

    fn profile(&self, knots_deg: &[[f64; 2]], name: &str) -> Result<ControlProfile, ScenarioError> {
        let points: Vec<(f64, f64)> = knots_deg.iter().map(|k| (k[0], k[1].to_radians())).collect();
        ControlProfile::piecewise_linear(&points)
            .map_err(|e| ScenarioError::Config(format!("entry.{name}: {e}")))
    }

    /// Angle-of-attack schedule in radians.
    pub fn alpha_profile(&self) -> Result<ControlProfile, ScenarioError> {
        self.profile(&self.alpha_profile_deg, "alpha_profile_deg")
    }

    /// Bank schedule in radians.
    pub fn sigma_profile(&self) -> Result<ControlProfile, ScenarioError> {
        self.profile(&self.sigma_profile_deg, "sigma_profile_deg")
    }

    /// Steepest slope (degrees/s) of a knot table.
    pub fn max_rate_deg(knots: &[[f64; 2]]) -> f64 {
        knots
            .windows(2)
            .map(|w| ((w[1][1] - w[0][1]) / (w[1][0] - w[0][0])).abs())
            .fold(0.0, f64::max)
    }
}

/// Complete scenario configuration.  Every section has defaults, so the
/// empty document is a valid orbit scenario.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub scenario: ScenarioSection,
    pub constants: ConstantsSection,
    pub orbit: OrbitSection,
    pub integrator: IntegratorSection,
    pub initial_state: InitialStateSection,
    pub entry: EntrySection,
}

fn config_err(e: Error) -> ScenarioError {
    ScenarioError::Config(e.to_string())
}

impl ScenarioConfig {
    /// Parses and validates a TOML document.
    pub fn from_toml_str(text: &str) -> Result<ScenarioConfig, ScenarioError> {
        let config: ScenarioConfig =
            toml::from_str(text).map_err(|e| ScenarioError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Serializes back to TOML (round-trips through
    /// [`ScenarioConfig::from_toml_str`]).
    pub fn to_toml_string(&self) -> Result<String, ScenarioError> {
        toml::to_string_pretty(self).map_err(|e| ScenarioError::Config(e.to_string()))
    }

    /// Field-level validation beyond what deserialization enforces.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let c = &self.constants;
        if !(c.mu.is_finite() && c.mu > 0.0) {
            return Err(ScenarioError::Config(format!(
                "constants.mu must be positive, got {}",
                c.mu
            )));
        }
        if !c.omega_e.is_finite() {
            return Err(ScenarioError::Config("constants.omega_e must be finite".into()));
        }
        if !(c.surface_radius.is_finite() && c.surface_radius > 0.0) {
            return Err(ScenarioError::Config(format!(
                "constants.surface_radius must be positive, got {}",
                c.surface_radius
            )));
        }
        if !(self.orbit.radius.is_finite() && self.orbit.radius > 0.0) {
            return Err(ScenarioError::Config(format!(
                "orbit.radius must be positive, got {}",
                self.orbit.radius
            )));
        }
        if self.integrator.steps == 0 {
            return Err(ScenarioError::Config("integrator.steps must be at least 1".into()));
        }
        if self.initial_state.representation_count() > 1 {
            return Err(ScenarioError::Config(
                "initial_state must provide exactly one of: spherical, cartesian, rv_euler".into(),
            ));
        }
        if self.initial_state.policy == PolicyChoice::Custom
            && self.initial_state.custom_seed.is_none()
        {
            return Err(ScenarioError::Config(
                "initial_state.policy = \"custom\" requires initial_state.custom_seed".into(),
            ));
        }
        let e = &self.entry;
        if !(e.mass.is_finite() && e.mass > 0.0) {
            return Err(ScenarioError::Config(format!(
                "entry.mass must be positive, got {}",
                e.mass
            )));
        }
        if !(e.t_final.is_finite() && e.t_final > 0.0) {
            return Err(ScenarioError::Config(format!(
                "entry.t_final must be positive, got {}",
                e.t_final
            )));
        }
        for (limit, name) in [
            (e.a_max, "entry.a_max"),
            (e.alpha_max_deg, "entry.alpha_max_deg"),
            (e.alpha_rate_max_deg, "entry.alpha_rate_max_deg"),
            (e.sigma_rate_max_deg, "entry.sigma_rate_max_deg"),
        ] {
            if !(limit.is_finite() && limit > 0.0) {
                return Err(ScenarioError::Config(format!("{name} must be positive, got {limit}")));
            }
        }
        if !(e.q_min.is_finite() && e.q_min >= 0.0) {
            return Err(ScenarioError::Config(format!(
                "entry.q_min must be non-negative, got {}",
                e.q_min
            )));
        }
        if self.scenario.kind != ScenarioKind::Entry {
            // Orbit-family runs: the formulation choice must be
            // compatible with the kind.
            if self.scenario.kind == ScenarioKind::Orbit
                && self.scenario.formulation == FormulationChoice::Both
            {
                return Err(ScenarioError::Config(
                    "scenario.kind = \"orbit\" runs one formulation; use \"compare\" for both"
                        .into(),
                ));
            }
        } else if self.scenario.formulation == FormulationChoice::Both {
            return Err(ScenarioError::Config(
                "scenario.kind = \"entry\" runs one formulation (rv-euler or spherical)".into(),
            ));
        }
        // Profile tables validate on construction.
        self.entry.alpha_profile()?;
        self.entry.sigma_profile()?;
        Ok(())
    }

    /// The circular-orbit experiment implied by the orbit section.
    pub fn circular_orbit(&self) -> Result<CircularOrbit, ScenarioError> {
        CircularOrbit::new(
            self.constants.mu,
            self.orbit.radius,
            self.orbit.inclination_deg.to_radians(),
        )
        .map_err(config_err)
    }

    /// Step-count list for convergence sweeps.
    pub fn convergence_steps(&self) -> Vec<usize> {
        if !self.integrator.convergence_steps.is_empty() {
            self.integrator.convergence_steps.clone()
        } else {
            crate::propagation::log_spaced_steps(
                self.integrator.convergence_min,
                self.integrator.convergence_max,
                self.integrator.convergence_points,
            )
        }
    }

    /// Applies command-line overrides (flags beat file values).
    pub fn apply_overrides(
        &mut self,
        kind: Option<ScenarioKind>,
        formulation: Option<FormulationChoice>,
        steps: Option<usize>,
    ) {
        if let Some(k) = kind {
            self.scenario.kind = k;
        }
        if let Some(f) = formulation {
            self.scenario.formulation = f;
        }
        if let Some(n) = steps {
            self.integrator.steps = n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_a_valid_orbit_scenario() {
        let config = ScenarioConfig::from_toml_str("").unwrap();
        assert_eq!(config.scenario.kind, ScenarioKind::Orbit);
        assert_eq!(config.constants.mu, 398600.4418);
        assert_eq!(config.orbit.radius, 6971.0);
    }

    #[test]
    fn toml_round_trip_is_identity() {
        let mut config = ScenarioConfig::default();
        config.scenario.kind = ScenarioKind::Entry;
        config.integrator.steps = 4321;
        config.entry.sigma_profile_deg = vec![[0.0, 180.0], [100.0, 90.0]];
        let text = config.to_toml_string().unwrap();
        let back = ScenarioConfig::from_toml_str(&text).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn unknown_fields_are_config_errors() {
        let err = ScenarioConfig::from_toml_str("[scenario]\nknd = \"orbit\"\n").unwrap_err();
        assert!(matches!(err, ScenarioError::Config(_)));
    }

    #[test]
    fn two_initial_representations_are_rejected() {
        let text = r#"
[initial_state]
spherical = { r = 6415.0, phi_deg = 0.0, theta_deg = 0.0, v = 7.1, gamma_deg = 0.0, psi_deg = 90.0 }
cartesian = { r_vec = [6415.0, 0.0, 0.0], v_vec = [0.0, 7.1, 0.0] }
"#;
        let err = ScenarioConfig::from_toml_str(text).unwrap_err();
        assert!(matches!(err, ScenarioError::Config(_)));
    }

    #[test]
    fn custom_policy_without_seed_is_rejected() {
        let text = "[initial_state]\npolicy = \"custom\"\n";
        let err = ScenarioConfig::from_toml_str(text).unwrap_err();
        assert!(matches!(err, ScenarioError::Config(_)));
    }

    #[test]
    fn orbit_kind_rejects_both_formulations() {
        let text = "[scenario]\nkind = \"orbit\"\nformulation = \"both\"\n";
        assert!(ScenarioConfig::from_toml_str(text).is_err());
    }

    #[test]
    fn default_entry_state_is_the_reference_entry_point() {
        let config = ScenarioConfig::default();
        let rv = config.initial_state.to_rv_euler().unwrap();
        assert_eq!(rv.r, 6415.0);
        assert_eq!(rv.v, 7.138);
        // Equatorial eastward level flight: position frame = observation
        // frame, velocity frame a quarter turn about the third axis.
        assert!(rv.ep_a.eps.norm() < 1e-12);
        assert!((rv.ep_b.eps.z - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn flag_overrides_beat_file_values() {
        let mut config = ScenarioConfig::from_toml_str("[integrator]\nsteps = 77\n").unwrap();
        config.apply_overrides(
            Some(ScenarioKind::Convergence),
            Some(FormulationChoice::Both),
            Some(123),
        );
        assert_eq!(config.scenario.kind, ScenarioKind::Convergence);
        assert_eq!(config.scenario.formulation, FormulationChoice::Both);
        assert_eq!(config.integrator.steps, 123);
    }

    #[test]
    fn max_profile_rate_measures_the_steepest_segment() {
        let knots = [[0.0, 0.0], [10.0, 20.0], [20.0, 10.0]];
        assert_eq!(EntrySection::max_rate_deg(&knots), 2.0);
        assert_eq!(EntrySection::max_rate_deg(&knots[..1]), 0.0);
    }
}
