//! Singularity-free translational dynamics on paired unit quaternions.
//!
//! Point-mass motion is usually parameterized either in Cartesian coordinates
//! or in spherical coordinates `{r, phi, theta, v, gamma, psi}`.  The
//! spherical form is attractive for flight mechanics because range, speed,
//! flight-path angle, and heading appear directly in the state, but its rate
//! equations divide by `cos(theta)` and `cos(gamma)` and therefore blow up at
//! the poles and in vertical flight.
//!
//! This crate implements an alternative ten-parameter state,
//!
//! ```text
//! { r, eps_A, eta_A, v, eps_B, eta_B }
//! ```
//!
//! where `r` is the radial distance, `v` is the observation-frame-relative
//! speed, and two unit quaternions orient a *position frame* `A` (first basis
//! vector along the position) and a *velocity frame* `B` (first basis vector
//! along the relative velocity).  Residual spin of each frame about its first
//! axis is removed by the nonholonomic constraints `omega_A1 = omega_B1 = 0`,
//! which are embedded directly in the rate equations.  The resulting
//! equations of motion contain no trigonometric singularities: they stay
//! finite through pole transits and through perfectly vertical flight, both
//! of which break the spherical form.
//!
//! # Example
//!
//! Propagate a circular low-Earth orbit for a quarter period and confirm
//! the radius is preserved:
//!
//! ```
//! use rv_euler::propagation::{rk4_propagate, CircularOrbit};
//! use rv_euler::rv_euler_dynamics::{
//!     state_derivative, two_body_force_provider, MassProperties, ObservationFrameSpec,
//! };
//!
//! let orbit = CircularOrbit::new(398_600.4418, 6_971.0, 97.777_f64.to_radians())?;
//! let state0 = orbit.initial_rv_euler()?;
//! let gravity = two_body_force_provider(orbit.mu);
//! let mass = MassProperties::new(1.0);
//!
//! let trajectory = rk4_propagate(
//!     |t, s| state_derivative(t, s, &gravity, &ObservationFrameSpec::INERTIAL, &mass),
//!     state0,
//!     0.0,
//!     orbit.period() / 4.0,
//!     200,
//!     false,
//! )?;
//!
//! let end = trajectory.last_state();
//! assert!((end.r - orbit.radius).abs() < 1e-6);
//! # Ok::<(), rv_euler::Error>(())
//! ```
//!
//! # Modules
//!
//! - [`euler_param_core`] — quaternion algebra: construction, direction
//!   cosine matrices, rate relations, the skew operator.
//! - [`rv_euler_dynamics`] — the ten-parameter state, kinematic and kinetic
//!   rates, apparent forces in a rotating observation frame, and force
//!   providers (two-body gravity, atmospheric entry).
//! - [`spherical_dynamics`] — the spherical-coordinate baseline used for
//!   singularity demonstrations and cross-checks.
//! - [`state_conversion`] — bidirectional Cartesian / spherical / quaternion
//!   state conversions, including the canonical resolution of the free
//!   rotation about the position and velocity directions.
//! - [`propagation`] — fixed-step classical RK4, the analytic circular-orbit
//!   oracle, position-error metrics, and the convergence study.
//! - [`scenarios_cli`] — scenario configuration, runners, and CSV/JSON
//!   output behind the `rvsim` binary.
//!
//! # Units
//!
//! Kilometers, seconds, radians, kilograms.  Forces are therefore in
//! `kg*km/s^2` (equal to kN); the dynamics work with force per unit mass
//! wherever mass cancels.  Public config files take angles in degrees and
//! convert exactly once at the boundary.

pub mod error;
pub mod euler_param_core;
pub mod propagation;
pub mod rv_euler_dynamics;
pub mod scenarios_cli;
pub mod spherical_dynamics;
pub mod state_conversion;
pub mod tolerances;

pub use error::Error;
