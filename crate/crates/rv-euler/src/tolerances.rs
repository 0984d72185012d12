//! Centralized numerical tolerances and singularity guard bands.
//!
//! Every guard or acceptance threshold used by the library lives here so the
//! numbers can be audited in one place.  Tests assert tighter bounds where
//! the algebra is exact; these constants are the *runtime* limits.

/// Accepted deviation of a quaternion norm from 1 at ingestion sites —
/// states built by conversions or supplied by callers/configs.
///
/// Integration without renormalization drifts the norm by well under 1e-12
/// per orbit, so 1e-6 flags genuinely corrupted inputs while never tripping
/// on healthy propagation output.
pub const UNIT_NORM_ACCEPT: f64 = 1e-6;

/// Quaternion norm sanity band on the integration path.
///
/// Runge-Kutta stage states sit off the unit manifold by O((h*omega)^2) —
/// percent-level at the coarsest convergence-study steps — and the rate
/// equations are polynomials that remain the correct vector field there,
/// so the derivative path only rejects norms outside this broad band,
/// which indicates a diverged propagation rather than stage displacement.
pub const NORM_SANITY_BAND: f64 = 0.5;

/// Accepted elementwise deviation of `C^T C` from identity (and of `det C`
/// from +1) when a matrix is claimed to be a rotation.
pub const ROTATION_ACCEPT: f64 = 1e-6;

/// Guard band on `|cos(theta)|` in spherical-coordinate rate equations.
///
/// Inside this band the longitude and azimuth rates exceed ~1e12 times the
/// physical angular rate; the evaluation is rejected instead of returning
/// garbage.  Pole-transit demonstrations approach but never enter the band.
pub const POLE_GUARD: f64 = 1e-12;

/// Guard band on `|cos(gamma)|` in the rotating-planet entry equations.
///
/// Vertical flight is the terminal regime of an entry trajectory, so the
/// alarm band is wider than the pole guard: within 1e-10 of vertical the
/// azimuth rate has lost all physical meaning.  The constant carries one
/// percent of margin over the nominal 1e-10 band because `cos` of an
/// angle exactly at the band edge rounds to just above 1e-10 (the
/// representation error of `pi/2` is ~6e-17, which dominates the band
/// edge); without the margin the edge itself would slip through a strict
/// comparison.
pub const VERTICAL_FLIGHT_GUARD: f64 = 1.01e-10;

/// Speed floor (km/s) below which the kinetic equations are singular.
///
/// The velocity-frame orientation is undefined at zero relative speed; the
/// kinetic rates divide by `v`.  Callers needing a different floor use
/// [`crate::rv_euler_dynamics::kinetic_rates_with_floor`].
pub const MIN_SPEED_KM_S: f64 = 1e-9;

/// Relative floor on `|r_hat x v_hat|` for the h-aligned initialization
/// policy; below it the specific-angular-momentum direction is undefined and
/// a custom seed must be supplied.
pub const DEGENERATE_DIRECTION: f64 = 1e-9;
