/* C interface to the singularity-free translational dynamics library. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of an FFI call.
typedef enum RvStatus {
  // Success; outputs are valid.
  RV_STATUS_OK = 0,
  // A required pointer argument was null.
  RV_STATUS_NULL_POINTER = 1,
  // Input violates a structural precondition (non-unit quaternion,
  // bad step count, ...).
  RV_STATUS_INVALID_INPUT = 2,
  // The state lies outside the mathematical domain of the requested
  // operation (zero speed, singular geometry reached during
  // propagation, ...).
  RV_STATUS_DOMAIN_ERROR = 3,
  // A direction needed to fix frame orientation is undefined for this
  // geometry (position parallel to velocity under the default policy).
  RV_STATUS_DEGENERATE_GEOMETRY = 4,
  // Index past the end of a trajectory.
  RV_STATUS_OUT_OF_RANGE = 5,
} RvStatus;

// Opaque propagated trajectory; query with [`rv_trajectory_len`] and
// [`rv_trajectory_sample`], release with [`rv_trajectory_free`].
typedef struct RvTrajectory RvTrajectory;

// Three-component vector (km or km/s by context).
typedef struct RvVec3 {
  double x;
  double y;
  double z;
} RvVec3;

// Cartesian position and velocity.
typedef struct RvCartesianState {
  struct RvVec3 r_vec;
  struct RvVec3 v_vec;
} RvCartesianState;

// Unit quaternion as vector part plus scalar part.
typedef struct RvQuat {
  double e1;
  double e2;
  double e3;
  double eta;
} RvQuat;

// Ten-parameter translational state: radius, position-frame quaternion,
// speed, velocity-frame quaternion.
typedef struct RvState {
  double r;
  struct RvQuat ep_a;
  double v;
  struct RvQuat ep_b;
} RvState;

// Spherical flight state: radius, longitude, latitude, speed,
// flight-path angle, azimuth (radians).
typedef struct RvSphericalState {
  double r;
  double phi;
  double theta;
  double v;
  double gamma;
  double psi;
} RvSphericalState;

// Quaternion time derivative.
typedef struct RvQuatRates {
  double e1_dot;
  double e2_dot;
  double e3_dot;
  double eta_dot;
} RvQuatRates;

// Time derivative of [`RvState`], with the frame angular velocities kept
// as diagnostics (their first components are identically zero).
typedef struct RvRates {
  double r_dot;
  struct RvQuatRates ep_a_rates;
  double v_dot;
  struct RvQuatRates ep_b_rates;
  double omega_a2;
  double omega_a3;
  double omega_b2;
  double omega_b3;
} RvRates;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static name of a status code (never null).
const char *rv_status_name(enum RvStatus status);

// Copies the calling thread's last error message into `buf` as a
// NUL-terminated string, truncating to `cap` bytes, and returns the
// length of the full message (0 when no error is recorded).  Passing a
// null buffer or zero capacity just queries the length.
//
// # Safety
//
// `buf` must point to at least `cap` writable bytes, or be null.
size_t rv_last_error_message(char *buf, size_t cap);

// Builds the ten-parameter state from Cartesian position and velocity
// using the default (angular-momentum-aligned) frame policy.
//
// # Safety
//
// `cart` must be valid for reads and `out` for writes, or null (null is
// reported as [`RvStatus::NullPointer`]).
enum RvStatus rv_state_from_cartesian(const struct RvCartesianState *cart, struct RvState *out);

// Like [`rv_state_from_cartesian`] but with a caller-supplied position
// frame: `seed` is a row-major 3x3 rotation whose first row must be the
// unit position direction.
//
// # Safety
//
// `cart` and `out` as in [`rv_state_from_cartesian`]; `seed` must be
// null or point to 9 readable doubles.
enum RvStatus rv_state_from_cartesian_seeded(const struct RvCartesianState *cart,
                                             const double *seed,
                                             struct RvState *out);

// Builds the ten-parameter state from a spherical state using the
// default frame policy.
//
// # Safety
//
// `spherical` must be valid for reads and `out` for writes, or null.
enum RvStatus rv_state_from_spherical(const struct RvSphericalState *spherical,
                                      struct RvState *out);

// Cartesian position and velocity of a ten-parameter state.
//
// # Safety
//
// `state` must be valid for reads and `out` for writes, or null.
enum RvStatus rv_state_to_cartesian(const struct RvState *state, struct RvCartesianState *out);

// Spherical image of a ten-parameter state.  Fails with
// [`RvStatus::DegenerateGeometry`] at the poles, where longitude and
// azimuth are undefined.
//
// # Safety
//
// `state` must be valid for reads and `out` for writes, or null.
enum RvStatus rv_state_to_spherical(const struct RvState *state, struct RvSphericalState *out);

// Strict structural validation: positive radius, finite speed, unit
// quaternions.
//
// # Safety
//
// `state` must be valid for reads, or null.
enum RvStatus rv_state_validate(const struct RvState *state);

// Time derivative of the state under inverse-square gravity with
// parameter `mu` (km³/s²) in an inertial observation frame.
//
// # Safety
//
// `state` must be valid for reads and `out` for writes, or null.
enum RvStatus rv_two_body_derivative(const struct RvState *state, double mu, struct RvRates *out);

// Propagates two-body motion from `state0` over `[t0, tf]` with `n`
// fixed steps of classical fourth-order Runge-Kutta (renormalizing the
// quaternions after each step when `renormalize` is set) and returns an
// owned trajectory handle through `out`.
//
// # Safety
//
// `state0` must be valid for reads and `out` for writes, or null.  On
// success `*out` owns heap memory that must be released with
// [`rv_trajectory_free`].
enum RvStatus rv_propagate_two_body(const struct RvState *state0,
                                    double mu,
                                    double t0,
                                    double tf,
                                    size_t n,
                                    bool renormalize,
                                    struct RvTrajectory **out);

// Number of samples in a trajectory (0 for a null handle).
//
// # Safety
//
// `traj` must be null or a live handle from [`rv_propagate_two_body`].
size_t rv_trajectory_len(const struct RvTrajectory *traj);

// Reads sample `index` of a trajectory: its time into `t_out` and its
// state into `state_out` (either output may be null to skip it).
//
// # Safety
//
// `traj` must be null or a live handle; non-null outputs must be valid
// for writes.
enum RvStatus rv_trajectory_sample(const struct RvTrajectory *traj,
                                   size_t index,
                                   double *t_out,
                                   struct RvState *state_out);

// Releases a trajectory handle.  Null is ignored; a handle must not be
// used after it is freed.
//
// # Safety
//
// `traj` must be null or a live handle from [`rv_propagate_two_body`]
// that has not already been freed.
void rv_trajectory_free(struct RvTrajectory *traj);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
