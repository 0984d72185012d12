//! Euler-parameter (unit quaternion) algebra for frame rotations.
//!
//! A rotation by angle `phi` about a unit axis `n_hat` is encoded by the four
//! Euler parameters
//!
//! ```text
//! eps = n_hat * sin(phi / 2),      eta = cos(phi / 2),
//! ```
//!
//! which satisfy `|eps|^2 + eta^2 = 1`.  For frames, the convention is fixed
//! as follows: if frame `B` is obtained by rotating frame `A` through `phi`
//! about `n_hat` (components in the `A` basis), then
//! [`dcm_from_euler_params`] yields the direction cosine matrix `C_BA` that
//! maps `A`-basis column matrices to `B`-basis column matrices, i.e.
//! `{p}_B = C_BA {p}_A` for any vector `p`.
//!
//! `eps` and `-eps, -eta` describe the same rotation (double cover); the
//! inverse extraction [`euler_params_from_dcm`] resolves the sign with the
//! convention `eta >= 0`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::tolerances;

// ── Vectors and matrices ────────────────────────────────────────────────────

/// Three real components of a vector expressed in some orthonormal basis.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    #[inline]
    pub fn new(x: f64, y: f64, z: f64) -> Vec3 {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(&self, other: &Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(&self, other: &Vec3) -> Vec3 {
        Vec3 {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    #[inline]
    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Unit vector in the same direction; error on (near-)zero input.
    pub fn normalized(&self) -> Result<Vec3, Error> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidInput(format!("cannot normalize vector with norm {n}")));
        }
        Ok(*self * (1.0 / n))
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn from_array(a: [f64; 3]) -> Vec3 {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// A 3x3 real matrix with row-major storage: `Mat3(rows)[i][j]` is row `i`,
/// column `j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    #[inline]
    pub fn from_rows(r0: Vec3, r1: Vec3, r2: Vec3) -> Mat3 {
        Mat3([r0.as_array(), r1.as_array(), r2.as_array()])
    }

    #[inline]
    pub fn row(&self, i: usize) -> Vec3 {
        Vec3::from_array(self.0[i])
    }

    #[inline]
    pub fn col(&self, j: usize) -> Vec3 {
        Vec3::new(self.0[0][j], self.0[1][j], self.0[2][j])
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|v| v.is_finite())
    }

    /// Checks `C^T C = I` elementwise and `det C = +1` within `tol`.
    pub fn validate_rotation(&self, tol: f64) -> Result<(), Error> {
        if !self.is_finite() {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        let gram = self.transpose() * *self;
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                let dev = (gram.0[i][j] - expect).abs();
                if dev > tol {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not orthonormal: |(C^T C - I)[{i}][{j}]| = {dev:.3e}"
                    )));
                }
            }
        }
        let ddev = (self.det() - 1.0).abs();
        if ddev > tol {
            return Err(Error::InvalidInput(format!(
                "matrix is not a proper rotation: |det - 1| = {ddev:.3e}"
            )));
        }
        Ok(())
    }
}

impl Mul<Mat3> for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[i][0] * rhs.0[0][j]
                    + self.0[i][1] * rhs.0[1][j]
                    + self.0[i][2] * rhs.0[2][j];
            }
        }
        Mat3(out)
    }
}

impl Mul<Vec3> for Mat3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, v: Vec3) -> Vec3 {
        Vec3::new(self.row(0).dot(&v), self.row(1).dot(&v), self.row(2).dot(&v))
    }
}

/// The skew-symmetric operator: `skew(p) * q` equals the cross product
/// `p x q`.
pub fn skew(p: Vec3) -> Mat3 {
    Mat3([[0.0, -p.z, p.y], [p.z, 0.0, -p.x], [-p.y, p.x, 0.0]])
}

// ── Euler parameters ────────────────────────────────────────────────────────

/// Euler parameters (a unit quaternion): vector part `eps`, scalar part
/// `eta`, with `|eps|^2 + eta^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerParams {
    pub eps: Vec3,
    pub eta: f64,
}

impl EulerParams {
    /// The identity rotation.
    pub const IDENTITY: EulerParams = EulerParams { eps: Vec3::ZERO, eta: 1.0 };

    #[inline]
    pub fn new(eps1: f64, eps2: f64, eps3: f64, eta: f64) -> EulerParams {
        EulerParams { eps: Vec3::new(eps1, eps2, eps3), eta }
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        (self.eps.norm_squared() + self.eta * self.eta).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.eps.is_finite() && self.eta.is_finite()
    }

    /// Deviation of the norm from 1; used by validation sites.
    #[inline]
    pub fn norm_error(&self) -> f64 {
        (self.norm() - 1.0).abs()
    }
}

/// Rotation by `angle` (radians) about a unit `axis`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisAngle {
    pub axis: Vec3,
    pub angle: f64,
}

impl AxisAngle {
    pub fn new(axis: Vec3, angle: f64) -> AxisAngle {
        AxisAngle { axis, angle }
    }
}

/// Time derivatives of the four Euler parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerParamRates {
    pub eps_dot: Vec3,
    pub eta_dot: f64,
}

impl EulerParamRates {
    pub const ZERO: EulerParamRates = EulerParamRates { eps_dot: Vec3::ZERO, eta_dot: 0.0 };
}

/// Builds Euler parameters from axis-angle form: `eps = axis sin(angle/2)`,
/// `eta = cos(angle/2)`.
///
/// The axis must be unit within [`tolerances::UNIT_NORM_ACCEPT`].
pub fn euler_params_from_axis_angle(aa: &AxisAngle) -> Result<EulerParams, Error> {
    if !aa.axis.is_finite() || !aa.angle.is_finite() {
        return Err(Error::InvalidInput("axis-angle has non-finite entries".into()));
    }
    let dev = (aa.axis.norm() - 1.0).abs();
    if dev > tolerances::UNIT_NORM_ACCEPT {
        return Err(Error::InvalidInput(format!(
            "rotation axis is not unit: |norm - 1| = {dev:.3e}"
        )));
    }
    let half = 0.5 * aa.angle;
    Ok(EulerParams { eps: aa.axis * half.sin(), eta: half.cos() })
}

/// Builds the direction cosine matrix `C_BA` from the Euler parameters of
/// the `A -> B` frame rotation.
///
/// With `e = (e1, e2, e3)` and scalar `n`:
///
/// ```text
///         | 1 - 2(e2^2 + e3^2)   2(e1 e2 + e3 n)     2(e1 e3 - e2 n)   |
/// C_BA =  | 2(e2 e1 - e3 n)      1 - 2(e3^2 + e1^2)  2(e2 e3 + e1 n)   |
///         | 2(e3 e1 + e2 n)      2(e3 e2 - e1 n)     1 - 2(e1^2 + e2^2)|
/// ```
///
/// The result is orthonormal with determinant +1 for unit input.
pub fn dcm_from_euler_params(ep: &EulerParams) -> Result<Mat3, Error> {
    let dev = ep.norm_error();
    if !ep.is_finite() || dev > tolerances::UNIT_NORM_ACCEPT {
        return Err(Error::InvalidInput(format!(
            "euler parameters are not unit: |norm - 1| = {dev:.3e}"
        )));
    }
    dcm_from_euler_params_raw(ep)
}

/// [`dcm_from_euler_params`] without the unit-norm gate: evaluates the
/// same quadratic form on any finite quadruple.
///
/// Runge-Kutta stage states depart the unit manifold by O(h²) per stage;
/// the equations of motion are polynomials in the parameters and remain
/// the correct vector field there, so the integration path must not reject
/// slightly off-manifold input.  For non-unit input the result is not
/// orthonormal — callers that need a rotation matrix use the gated
/// constructor.
pub fn dcm_from_euler_params_raw(ep: &EulerParams) -> Result<Mat3, Error> {
    if !ep.is_finite() {
        return Err(Error::InvalidInput("euler parameters are not finite".into()));
    }
    let (e1, e2, e3, n) = (ep.eps.x, ep.eps.y, ep.eps.z, ep.eta);
    Ok(Mat3([
        [1.0 - 2.0 * (e2 * e2 + e3 * e3), 2.0 * (e1 * e2 + e3 * n), 2.0 * (e1 * e3 - e2 * n)],
        [2.0 * (e2 * e1 - e3 * n), 1.0 - 2.0 * (e3 * e3 + e1 * e1), 2.0 * (e2 * e3 + e1 * n)],
        [2.0 * (e3 * e1 + e2 * n), 2.0 * (e3 * e2 - e1 * n), 1.0 - 2.0 * (e1 * e1 + e2 * e2)],
    ]))
}

/// Extracts Euler parameters from a rotation matrix, resolving the double
/// cover with the convention `eta >= 0`.
///
/// Uses a branch-robust extraction: the largest of the four squared
/// components `{4 eta^2, 4 e1^2, 4 e2^2, 4 e3^2}` is computed by square
/// root and the remaining three by division, so no branch divides by a
/// small number even for rotations near 180 degrees.
pub fn euler_params_from_dcm(c: &Mat3) -> Result<EulerParams, Error> {
    c.validate_rotation(tolerances::ROTATION_ACCEPT)?;
    let m = &c.0;
    let trace = m[0][0] + m[1][1] + m[2][2];
    // Candidates for (2*eta)^2, (2*e1)^2, (2*e2)^2, (2*e3)^2.
    let cand = [
        1.0 + trace,
        1.0 + 2.0 * m[0][0] - trace,
        1.0 + 2.0 * m[1][1] - trace,
        1.0 + 2.0 * m[2][2] - trace,
    ];
    let (best, _) =
        cand.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("four candidates");
    let root = cand[best].max(0.0).sqrt();
    let d = 2.0 * root;
    let ep = match best {
        0 => EulerParams::new(
            (m[1][2] - m[2][1]) / d,
            (m[2][0] - m[0][2]) / d,
            (m[0][1] - m[1][0]) / d,
            0.5 * root,
        ),
        1 => EulerParams::new(
            0.5 * root,
            (m[0][1] + m[1][0]) / d,
            (m[2][0] + m[0][2]) / d,
            (m[1][2] - m[2][1]) / d,
        ),
        2 => EulerParams::new(
            (m[0][1] + m[1][0]) / d,
            0.5 * root,
            (m[1][2] + m[2][1]) / d,
            (m[2][0] - m[0][2]) / d,
        ),
        _ => EulerParams::new(
            (m[2][0] + m[0][2]) / d,
            (m[1][2] + m[2][1]) / d,
            0.5 * root,
            (m[0][1] - m[1][0]) / d,
        ),
    };
    let ep = normalize(&ep)?;
    if ep.eta < 0.0 {
        Ok(EulerParams { eps: -ep.eps, eta: -ep.eta })
    } else {
        Ok(ep)
    }
}

/// Euler-parameter rates from the angular velocity of the rotated frame,
/// with `omega` expressed in the *rotated* (`B`) basis:
///
/// ```text
/// e1_dot = ( eta w1 - e3 w2 + e2 w3) / 2
/// e2_dot = ( e3 w1 + eta w2 - e1 w3) / 2
/// e3_dot = (-e2 w1 + e1 w2 + eta w3) / 2
/// eta_dot = -(e1 w1 + e2 w2 + e3 w3) / 2
/// ```
///
/// The norm rate `eps . eps_dot + eta eta_dot` is zero in exact algebra.
pub fn euler_param_rates(ep: &EulerParams, omega: &Vec3) -> EulerParamRates {
    let (e1, e2, e3, n) = (ep.eps.x, ep.eps.y, ep.eps.z, ep.eta);
    let (w1, w2, w3) = (omega.x, omega.y, omega.z);
    EulerParamRates {
        eps_dot: Vec3::new(
            0.5 * (n * w1 - e3 * w2 + e2 * w3),
            0.5 * (e3 * w1 + n * w2 - e1 * w3),
            0.5 * (-e2 * w1 + e1 * w2 + n * w3),
        ),
        eta_dot: -0.5 * (e1 * w1 + e2 * w2 + e3 * w3),
    }
}

/// Inverse of [`euler_param_rates`]: recovers the angular velocity (rotated
/// basis) from the Euler parameters and their rates:
///
/// ```text
/// w1 = 2 (eta e1_dot - eta_dot e1 + e3 e2_dot - e3_dot e2)
/// w2 = 2 (eta e2_dot - eta_dot e2 - e3 e1_dot + e3_dot e1)
/// w3 = 2 (eta e3_dot - eta_dot e3 + e2 e1_dot - e2_dot e1)
/// ```
pub fn omega_from_rates(ep: &EulerParams, rates: &EulerParamRates) -> Vec3 {
    let (e1, e2, e3, n) = (ep.eps.x, ep.eps.y, ep.eps.z, ep.eta);
    let (d1, d2, d3, dn) = (rates.eps_dot.x, rates.eps_dot.y, rates.eps_dot.z, rates.eta_dot);
    Vec3::new(
        2.0 * (n * d1 - dn * e1 + e3 * d2 - d3 * e2),
        2.0 * (n * d2 - dn * e2 - e3 * d1 + d3 * e1),
        2.0 * (n * d3 - dn * e3 + e2 * d1 - d2 * e1),
    )
}

/// Rescales to unit norm, preserving direction.  Error on zero norm.
pub fn normalize(ep: &EulerParams) -> Result<EulerParams, Error> {
    let n = ep.norm();
    if n == 0.0 || !n.is_finite() {
        return Err(Error::InvalidInput(format!(
            "cannot normalize euler parameters with norm {n}"
        )));
    }
    let s = 1.0 / n;
    Ok(EulerParams { eps: ep.eps * s, eta: ep.eta * s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn assert_vec3_eq(a: Vec3, b: Vec3, eps: f64) {
        assert_abs_diff_eq!(a.x, b.x, epsilon = eps);
        assert_abs_diff_eq!(a.y, b.y, epsilon = eps);
        assert_abs_diff_eq!(a.z, b.z, epsilon = eps);
    }

    fn assert_mat3_eq(a: &Mat3, b: &Mat3, eps: f64) {
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(a.0[i][j], b.0[i][j], epsilon = eps);
            }
        }
    }

    /// Axis-angle rotation matrix built directly from the matrix identity
    /// `C = cos(phi) I + (1 - cos(phi)) n n^T - sin(phi) skew(n)`.
    /// Independent of the half-angle construction under test.
    fn dcm_from_axis_angle_direct(axis: Vec3, angle: f64) -> Mat3 {
        let (s, c) = angle.sin_cos();
        let n = axis;
        let mut out = [[0.0; 3]; 3];
        let nn = [
            [n.x * n.x, n.x * n.y, n.x * n.z],
            [n.y * n.x, n.y * n.y, n.y * n.z],
            [n.z * n.x, n.z * n.y, n.z * n.z],
        ];
        let sk = skew(n);
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { 1.0 } else { 0.0 };
                out[i][j] = c * id + (1.0 - c) * nn[i][j] - s * sk.0[i][j];
            }
        }
        Mat3(out)
    }

    // ── skew ──────────────────────────────────────────────────────────────

    #[test]
    fn skew_of_zero_is_zero_matrix() {
        let m = skew(Vec3::ZERO);
        assert_mat3_eq(&m, &Mat3([[0.0; 3]; 3]), 0.0);
    }

    #[test]
    fn skew_reproduces_basis_cross_product() {
        let m = skew(Vec3::new(1.0, 0.0, 0.0));
        assert_vec3_eq(m * Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.0, 0.0, 1.0), 0.0);
    }

    #[test]
    fn skew_matches_direct_cross_product() {
        // (1,2,3) x (4,5,6) = (-3, 6, -3), evaluated by hand.
        let p = Vec3::new(1.0, 2.0, 3.0);
        let q = Vec3::new(4.0, 5.0, 6.0);
        assert_vec3_eq(skew(p) * q, Vec3::new(-3.0, 6.0, -3.0), 0.0);
        assert_vec3_eq(p.cross(&q), Vec3::new(-3.0, 6.0, -3.0), 0.0);
    }

    // ── axis-angle construction ───────────────────────────────────────────

    #[test]
    fn zero_angle_gives_identity_params() {
        let ep =
            euler_params_from_axis_angle(&AxisAngle::new(Vec3::new(0.0, 0.0, 1.0), 0.0)).unwrap();
        assert_eq!(ep, EulerParams::IDENTITY);
    }

    #[test]
    fn quarter_turn_about_axis3() {
        let ep = euler_params_from_axis_angle(&AxisAngle::new(Vec3::new(0.0, 0.0, 1.0), PI / 2.0))
            .unwrap();
        assert_relative_eq!(ep.eps.z, FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_relative_eq!(ep.eta, FRAC_1_SQRT_2, max_relative = 1e-15);
        assert_eq!(ep.eps.x, 0.0);
        assert_eq!(ep.eps.y, 0.0);
    }

    #[test]
    fn retrograde_axis1_rotation() {
        // axis (1,0,0), angle -97.79 deg:
        // eps1 = sin(-48.895 deg), eta = cos(-48.895 deg), high-precision
        // values computed with 30-digit arithmetic.
        let ep = euler_params_from_axis_angle(&AxisAngle::new(
            Vec3::new(1.0, 0.0, 0.0),
            (-97.79f64).to_radians(),
        ))
        .unwrap();
        assert_relative_eq!(ep.eps.x, -0.753506022620053, max_relative = 1e-14);
        assert_relative_eq!(ep.eta, 0.657441004102504, max_relative = 1e-14);
    }

    #[test]
    fn non_unit_axis_is_rejected() {
        let r = euler_params_from_axis_angle(&AxisAngle::new(Vec3::new(0.0, 0.0, 2.0), 1.0));
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    // ── DCM construction and extraction ───────────────────────────────────

    #[test]
    fn identity_params_give_identity_dcm() {
        let c = dcm_from_euler_params(&EulerParams::IDENTITY).unwrap();
        assert_mat3_eq(&c, &Mat3::IDENTITY, 0.0);
    }

    #[test]
    fn quarter_turn_dcm_rows() {
        let ep = EulerParams::new(0.0, 0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        let c = dcm_from_euler_params(&ep).unwrap();
        let expect = Mat3([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        assert_mat3_eq(&c, &expect, 1e-15);
    }

    #[test]
    fn non_unit_params_are_rejected() {
        let bad = EulerParams::new(0.5, 0.0, 0.0, 1.0);
        assert!(matches!(dcm_from_euler_params(&bad), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn extraction_inverts_quarter_turn() {
        let c = Mat3([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        let ep = euler_params_from_dcm(&c).unwrap();
        assert_relative_eq!(ep.eps.z, FRAC_1_SQRT_2, max_relative = 1e-12);
        assert_relative_eq!(ep.eta, FRAC_1_SQRT_2, max_relative = 1e-12);
        assert_abs_diff_eq!(ep.eps.x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ep.eps.y, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn extraction_of_identity() {
        let ep = euler_params_from_dcm(&Mat3::IDENTITY).unwrap();
        assert_eq!(ep.eps, Vec3::ZERO);
        assert_eq!(ep.eta, 1.0);
    }

    #[test]
    fn extraction_is_robust_near_half_turn() {
        // 180-degree-adjacent rotations are where naive trace-based
        // extraction loses all precision; each axis exercises a different
        // branch of the extraction.
        for axis in [
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
            Vec3::new(0.6, 0.48, 0.64),
        ] {
            let angle = PI - 1e-7;
            let c = dcm_from_axis_angle_direct(axis, angle);
            let ep = euler_params_from_dcm(&c).unwrap();
            let back = dcm_from_euler_params(&ep).unwrap();
            assert_mat3_eq(&back, &c, 1e-9);
            assert!(ep.eta >= 0.0);
        }
    }

    #[test]
    fn non_rotation_matrix_is_rejected() {
        let m = Mat3([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(matches!(euler_params_from_dcm(&m), Err(Error::InvalidInput(_))));
        let reflect = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert!(matches!(euler_params_from_dcm(&reflect), Err(Error::InvalidInput(_))));
    }

    // ── rate relations ────────────────────────────────────────────────────

    #[test]
    fn zero_omega_gives_zero_rates() {
        let ep = EulerParams::new(0.1, 0.2, 0.3, (1.0f64 - 0.14).sqrt());
        let rates = euler_param_rates(&ep, &Vec3::ZERO);
        assert_eq!(rates, EulerParamRates::ZERO);
    }

    #[test]
    fn identity_params_spin_about_axis1() {
        let w = 0.25;
        let rates = euler_param_rates(&EulerParams::IDENTITY, &Vec3::new(w, 0.0, 0.0));
        assert_vec3_eq(rates.eps_dot, Vec3::new(w / 2.0, 0.0, 0.0), 1e-16);
        assert_eq!(rates.eta_dot, 0.0);
    }

    #[test]
    fn constant_spin_rates_recover_omega() {
        // ep(t) = (sin(w t / 2), 0, 0, cos(w t / 2)) has analytic derivative
        // (w/2 cos(w t / 2), 0, 0, -w/2 sin(w t / 2)); the inverse relation
        // must return exactly (w, 0, 0).
        let w = 0.731_f64;
        let t = 1.37;
        let (s, c) = (0.5 * w * t).sin_cos();
        let ep = EulerParams::new(s, 0.0, 0.0, c);
        let rates =
            EulerParamRates { eps_dot: Vec3::new(0.5 * w * c, 0.0, 0.0), eta_dot: -0.5 * w * s };
        let omega = omega_from_rates(&ep, &rates);
        assert_relative_eq!(omega.x, w, max_relative = 1e-15);
        assert_abs_diff_eq!(omega.y, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(omega.z, 0.0, epsilon = 1e-16);
    }

    #[test]
    fn zero_rates_give_zero_omega() {
        let ep = EulerParams::new(0.5, 0.5, 0.5, 0.5);
        assert_eq!(omega_from_rates(&ep, &EulerParamRates::ZERO), Vec3::ZERO);
    }

    // ── normalize ─────────────────────────────────────────────────────────

    #[test]
    fn normalize_rescales_scalar_quadruple() {
        let ep = normalize(&EulerParams::new(0.0, 0.0, 0.0, 2.0)).unwrap();
        assert_eq!(ep, EulerParams::IDENTITY);
    }

    #[test]
    fn normalize_preserves_unit_input() {
        let ep = EulerParams::new(0.5, 0.5, 0.5, 0.5);
        let n = normalize(&ep).unwrap();
        assert_abs_diff_eq!(n.eps.x, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(n.eta, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn normalize_scales_by_inverse_norm() {
        // (0.6, 0, 0, 0.9): norm^2 = 1.17; scaled values computed with
        // 30-digit arithmetic.
        let ep = normalize(&EulerParams::new(0.6, 0.0, 0.0, 0.9)).unwrap();
        assert_relative_eq!(ep.eps.x, 0.554700196225229, max_relative = 1e-14);
        assert_relative_eq!(ep.eta, 0.832050294337844, max_relative = 1e-14);
    }

    #[test]
    fn normalize_rejects_zero() {
        assert!(matches!(
            normalize(&EulerParams::new(0.0, 0.0, 0.0, 0.0)),
            Err(Error::InvalidInput(_))
        ));
    }

    // ── property tests ────────────────────────────────────────────────────

    prop_compose! {
        /// Uniformly random unit axis via normalized Gaussian-free rejection
        /// of short vectors.
        fn arb_unit_vec3()(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0) -> Vec3 {
            let v = Vec3::new(x + 0.1, y - 0.05, z + 0.2);
            v.normalized().unwrap()
        }
    }

    prop_compose! {
        fn arb_unit_params()(axis in arb_unit_vec3(), angle in -PI..PI) -> EulerParams {
            euler_params_from_axis_angle(&AxisAngle::new(axis, angle)).unwrap()
        }
    }

    proptest! {
        #[test]
        fn dcm_is_orthonormal_with_unit_det(ep in arb_unit_params()) {
            let c = dcm_from_euler_params(&ep).unwrap();
            let gram = c.transpose() * c;
            for i in 0..3 {
                for j in 0..3 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((gram.0[i][j] - expect).abs() < 1e-12);
                }
            }
            prop_assert!((c.det() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn half_angle_and_matrix_identities_agree(axis in arb_unit_vec3(), angle in -PI..PI) {
            let ep = euler_params_from_axis_angle(&AxisAngle::new(axis, angle)).unwrap();
            let via_params = dcm_from_euler_params(&ep).unwrap();
            let direct = dcm_from_axis_angle_direct(axis, angle);
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!((via_params.0[i][j] - direct.0[i][j]).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn rate_relation_round_trips_omega(
            ep in arb_unit_params(),
            wx in -2.0f64..2.0,
            wy in -2.0f64..2.0,
            wz in -2.0f64..2.0,
        ) {
            let omega = Vec3::new(wx, wy, wz);
            let rates = euler_param_rates(&ep, &omega);
            let back = omega_from_rates(&ep, &rates);
            prop_assert!((back - omega).norm() < 1e-12);
        }

        #[test]
        fn rates_conserve_the_norm(
            ep in arb_unit_params(),
            wx in -2.0f64..2.0,
            wy in -2.0f64..2.0,
            wz in -2.0f64..2.0,
        ) {
            let rates = euler_param_rates(&ep, &Vec3::new(wx, wy, wz));
            let norm_rate = ep.eps.dot(&rates.eps_dot) + ep.eta * rates.eta_dot;
            prop_assert!(norm_rate.abs() < 1e-15);
        }

        #[test]
        fn double_cover_gives_identical_dcm(ep in arb_unit_params()) {
            let minus = EulerParams { eps: -ep.eps, eta: -ep.eta };
            let a = dcm_from_euler_params(&ep).unwrap();
            let b = dcm_from_euler_params(&minus).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!((a.0[i][j] - b.0[i][j]).abs() < 1e-15);
                }
            }
        }

        #[test]
        fn dcm_round_trip_is_fixed_point(ep in arb_unit_params()) {
            let c = dcm_from_euler_params(&ep).unwrap();
            let back = euler_params_from_dcm(&c).unwrap();
            let c2 = dcm_from_euler_params(&back).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!((c.0[i][j] - c2.0[i][j]).abs() < 1e-9);
                }
            }
            prop_assert!(back.eta >= 0.0);
        }
    }
}
