//! Exercises the C ABI end to end from the Rust side: conversions,
//! propagation through the opaque handle, and every error path.

use rv_euler_ffi::*;

const MU: f64 = 398600.4418;

fn circular_cartesian(radius: f64) -> RvCartesianState {
    let speed = (MU / radius).sqrt();
    RvCartesianState {
        r_vec: RvVec3 { x: radius, y: 0.0, z: 0.0 },
        v_vec: RvVec3 { x: 0.0, y: speed, z: 0.0 },
    }
}

fn last_error() -> String {
    let mut buf = vec![0i8; 256];
    let len = unsafe { rv_last_error_message(buf.as_mut_ptr() as *mut _, buf.len()) };
    let bytes: Vec<u8> = buf[..len.min(buf.len() - 1)].iter().map(|&b| b as u8).collect();
    String::from_utf8_lossy(&bytes).into_owned()
}

#[test]
fn cartesian_round_trip_through_the_abi() {
    let cart = circular_cartesian(7000.0);
    let mut state = RvState::default();
    let status = unsafe { rv_state_from_cartesian(&cart, &mut state) };
    assert_eq!(status, RvStatus::Ok);
    assert!((state.r - 7000.0).abs() < 1e-9);
    assert_eq!(unsafe { rv_state_validate(&state) }, RvStatus::Ok);

    let mut back = RvCartesianState::default();
    assert_eq!(unsafe { rv_state_to_cartesian(&state, &mut back) }, RvStatus::Ok);
    for (a, b) in [
        (back.r_vec.x, cart.r_vec.x),
        (back.r_vec.y, cart.r_vec.y),
        (back.r_vec.z, cart.r_vec.z),
        (back.v_vec.x, cart.v_vec.x),
        (back.v_vec.y, cart.v_vec.y),
        (back.v_vec.z, cart.v_vec.z),
    ] {
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
}

#[test]
fn spherical_round_trip_through_the_abi() {
    let spherical =
        RvSphericalState { r: 6971.0, phi: 0.4, theta: -0.3, v: 7.562, gamma: 0.05, psi: 1.2 };
    let mut state = RvState::default();
    assert_eq!(unsafe { rv_state_from_spherical(&spherical, &mut state) }, RvStatus::Ok);
    let mut back = RvSphericalState::default();
    assert_eq!(unsafe { rv_state_to_spherical(&state, &mut back) }, RvStatus::Ok);
    for (a, b) in [
        (back.r, spherical.r),
        (back.phi, spherical.phi),
        (back.theta, spherical.theta),
        (back.v, spherical.v),
        (back.gamma, spherical.gamma),
        (back.psi, spherical.psi),
    ] {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }
}

#[test]
fn seeded_construction_accepts_a_rolled_frame() {
    let cart = circular_cartesian(7000.0);
    // Position along +x: any rotation with first row (1, 0, 0) is a valid
    // position frame; roll the remaining axes by 90 degrees.
    let seed = [1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, -1.0, 0.0];
    let mut state = RvState::default();
    let status = unsafe { rv_state_from_cartesian_seeded(&cart, seed.as_ptr(), &mut state) };
    assert_eq!(status, RvStatus::Ok);
    assert_eq!(unsafe { rv_state_validate(&state) }, RvStatus::Ok);

    // A seed whose first row is not the position direction is invalid.
    let bad = [0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, -1.0];
    let status = unsafe { rv_state_from_cartesian_seeded(&cart, bad.as_ptr(), &mut state) };
    assert_eq!(status, RvStatus::InvalidInput);
}

#[test]
fn two_body_derivative_matches_circular_motion() {
    let cart = circular_cartesian(7000.0);
    let mut state = RvState::default();
    unsafe { rv_state_from_cartesian(&cart, &mut state) };
    let mut rates = RvRates::default();
    assert_eq!(unsafe { rv_two_body_derivative(&state, MU, &mut rates) }, RvStatus::Ok);
    // Circular orbit: radius and speed are stationary; the position frame
    // turns at the orbit rate.
    assert!(rates.r_dot.abs() < 1e-12);
    assert!(rates.v_dot.abs() < 1e-12);
    let orbit_rate = state.v / state.r;
    assert!((rates.omega_a3.abs() - orbit_rate).abs() < 1e-12);
}

#[test]
fn propagation_handle_lifecycle() {
    let cart = circular_cartesian(7000.0);
    let mut state = RvState::default();
    unsafe { rv_state_from_cartesian(&cart, &mut state) };
    let period = std::f64::consts::TAU * (7000.0_f64.powi(3) / MU).sqrt();

    let mut traj: *mut RvTrajectory = std::ptr::null_mut();
    let status = unsafe { rv_propagate_two_body(&state, MU, 0.0, period, 400, false, &mut traj) };
    assert_eq!(status, RvStatus::Ok);
    assert!(!traj.is_null());
    assert_eq!(unsafe { rv_trajectory_len(traj) }, 401);

    let mut t = f64::NAN;
    let mut sample = RvState::default();
    assert_eq!(unsafe { rv_trajectory_sample(traj, 400, &mut t, &mut sample) }, RvStatus::Ok);
    assert!((t - period).abs() < 1e-9);
    // One full period returns to the start (integrator accuracy at this
    // step count is far below a meter).
    let mut end = RvCartesianState::default();
    unsafe { rv_state_to_cartesian(&sample, &mut end) };
    assert!((end.r_vec.x - 7000.0).abs() < 1e-3);
    assert!(end.r_vec.y.abs() < 1e-3);

    assert_eq!(
        unsafe { rv_trajectory_sample(traj, 401, &mut t, &mut sample) },
        RvStatus::OutOfRange
    );
    unsafe { rv_trajectory_free(traj) };
    // Null handles are inert.
    unsafe { rv_trajectory_free(std::ptr::null_mut()) };
    assert_eq!(unsafe { rv_trajectory_len(std::ptr::null()) }, 0);
}

#[test]
fn null_pointers_are_reported_not_dereferenced() {
    let mut state = RvState::default();
    let mut cart = RvCartesianState::default();
    assert_eq!(
        unsafe { rv_state_from_cartesian(std::ptr::null(), &mut state) },
        RvStatus::NullPointer
    );
    assert_eq!(
        unsafe { rv_state_to_cartesian(std::ptr::null(), &mut cart) },
        RvStatus::NullPointer
    );
    let good = circular_cartesian(7000.0);
    assert_eq!(
        unsafe { rv_state_from_cartesian(&good, std::ptr::null_mut()) },
        RvStatus::NullPointer
    );
    let mut traj: *mut RvTrajectory = std::ptr::null_mut();
    assert_eq!(
        unsafe { rv_propagate_two_body(std::ptr::null(), MU, 0.0, 1.0, 10, false, &mut traj) },
        RvStatus::NullPointer
    );
}

#[test]
fn error_classes_and_messages_cross_the_boundary() {
    // Non-unit quaternion: structural rejection with a readable message.
    let mut bad = RvState {
        r: 7000.0,
        ep_a: RvQuat { e1: 0.5, e2: 0.0, e3: 0.0, eta: 0.5 },
        v: 7.5,
        ep_b: RvQuat { e1: 0.0, e2: 0.0, e3: 0.0, eta: 1.0 },
    };
    assert_eq!(unsafe { rv_state_validate(&bad) }, RvStatus::InvalidInput);
    let message = last_error();
    assert!(message.contains("unit"), "message: {message}");

    // Zero speed: the kinetic equations are singular there.
    bad.ep_a = RvQuat { e1: 0.0, e2: 0.0, e3: 0.0, eta: 1.0 };
    bad.v = 0.0;
    let mut rates = RvRates::default();
    assert_eq!(unsafe { rv_two_body_derivative(&bad, MU, &mut rates) }, RvStatus::DomainError);

    // Pole transit: the spherical image does not exist.
    let polar = RvCartesianState {
        r_vec: RvVec3 { x: 0.0, y: 0.0, z: 7000.0 },
        v_vec: RvVec3 { x: 7.5, y: 0.0, z: 0.0 },
    };
    let mut state = RvState::default();
    assert_eq!(unsafe { rv_state_from_cartesian(&polar, &mut state) }, RvStatus::Ok);
    let mut spherical = RvSphericalState::default();
    assert_eq!(
        unsafe { rv_state_to_spherical(&state, &mut spherical) },
        RvStatus::DegenerateGeometry
    );

    // Success clears the slate.
    let good = circular_cartesian(7000.0);
    assert_eq!(unsafe { rv_state_from_cartesian(&good, &mut state) }, RvStatus::Ok);
    assert_eq!(unsafe { rv_last_error_message(std::ptr::null_mut(), 0) }, 0);
}

#[test]
fn status_names_are_stable_c_strings() {
    for status in [
        RvStatus::Ok,
        RvStatus::NullPointer,
        RvStatus::InvalidInput,
        RvStatus::DomainError,
        RvStatus::DegenerateGeometry,
        RvStatus::OutOfRange,
    ] {
        let ptr = rv_status_name(status);
        assert!(!ptr.is_null());
        let name = unsafe { std::ffi::CStr::from_ptr(ptr) }.to_str().unwrap();
        assert!(!name.is_empty());
    }
}

#[test]
fn message_truncation_respects_capacity() {
    // A non-positive radius is outside the state space entirely.
    let mut bad = RvState { r: -1.0, v: 1.0, ..RvState::default() };
    bad.ep_a.eta = 1.0;
    bad.ep_b.eta = 1.0;
    assert_eq!(unsafe { rv_state_validate(&bad) }, RvStatus::DomainError);

    let full_len = unsafe { rv_last_error_message(std::ptr::null_mut(), 0) };
    assert!(full_len > 8);
    let mut tiny = [0i8; 8];
    let reported = unsafe { rv_last_error_message(tiny.as_mut_ptr() as *mut _, tiny.len()) };
    assert_eq!(reported, full_len);
    assert_eq!(tiny[7], 0, "NUL terminated even when truncated");
    let text: String = tiny[..7].iter().map(|&b| b as u8 as char).collect();
    assert!(!text.is_empty());
}
