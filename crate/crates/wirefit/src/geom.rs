//! Small 3D vector/plane toolkit shared by the whole pipeline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 3D vector or point in meters. Points are identified by their slice
/// position everywhere in the pipeline, so no per-point id is carried here.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Points and vectors share a representation.
pub type Point3 = Vec3;

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3 {
            x: self.y * o.z - self.z * o.y,
            y: self.z * o.x - self.x * o.z,
            z: self.x * o.y - self.y * o.x,
        }
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn distance(self, o: Vec3) -> f64 {
        (self - o).norm()
    }

    pub fn distance_squared(self, o: Vec3) -> f64 {
        (self - o).norm_squared()
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self.scale(1.0 / n))
        } else {
            None
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl std::ops::Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        self.scale(s)
    }
}

impl std::ops::Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self.scale(-1.0)
    }
}

/// Orthonormal coordinate frame of a (near-)vertical plane holding one wire.
///
/// `axis_x` is horizontal and in-plane, `axis_y` is the in-plane vertical-ish
/// direction with a non-negative up component, `normal` completes the frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneFrame {
    pub origin: Point3,
    pub axis_x: Vec3,
    pub axis_y: Vec3,
    pub normal: Vec3,
}

impl PlaneFrame {
    /// Build a frame from a plane normal and a point on the plane.
    ///
    /// The in-plane x axis is the horizontal projection of the normal rotated
    /// clockwise by 90 degrees (viewed from above); the y axis is
    /// `normal x axis_x`, flipped together with the normal if needed so that
    /// it points upward.
    pub fn from_normal(origin: Point3, normal: Vec3) -> Result<PlaneFrame> {
        if !origin.is_finite() || !normal.is_finite() {
            return Err(Error::NonFinite);
        }
        let mut n = normal
            .normalized()
            .ok_or(Error::DegenerateGeometry("zero plane normal"))?;
        let h = Vec3::new(n.x, n.y, 0.0);
        let h = h
            .normalized()
            .ok_or(Error::DegenerateGeometry("plane normal is vertical"))?;
        // Clockwise rotation of (hx, hy) about the up axis.
        let axis_x = Vec3::new(h.y, -h.x, 0.0);
        let mut axis_y = n.cross(axis_x);
        if axis_y.z < 0.0 {
            axis_y = -axis_y;
            n = -n;
        }
        Ok(PlaneFrame { origin, axis_x, axis_y, normal: n })
    }

    /// In-plane coordinates plus the signed offset along the normal.
    pub fn project(&self, p: Point3) -> (f64, f64, f64) {
        let d = p - self.origin;
        (d.dot(self.axis_x), d.dot(self.axis_y), d.dot(self.normal))
    }

    /// Map in-plane coordinates back to 3D.
    pub fn unproject(&self, u: f64, v: f64) -> Point3 {
        self.origin + self.axis_x * u + self.axis_y * v
    }

    /// Check mutual orthonormality of the axes within `tol`.
    pub fn is_orthonormal(&self, tol: f64) -> bool {
        let (x, y, n) = (self.axis_x, self.axis_y, self.normal);
        (x.norm() - 1.0).abs() <= tol
            && (y.norm() - 1.0).abs() <= tol
            && (n.norm() - 1.0).abs() <= tol
            && x.dot(y).abs() <= tol
            && x.dot(n).abs() <= tol
            && y.dot(n).abs() <= tol
    }
}

/// Principal direction (unit 2D vector) of a centered 2D scatter.
pub(crate) fn principal_direction_2d(sxx: f64, sxy: f64, syy: f64) -> (f64, f64) {
    let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    (theta.cos(), theta.sin())
}

/// Eigenvalues (ascending) of a symmetric 3x3 matrix given as
/// (xx, xy, xz, yy, yz, zz). Closed-form trigonometric solution.
pub(crate) fn sym3_eigenvalues(m: [f64; 6]) -> [f64; 3] {
    let [xx, xy, xz, yy, yz, zz] = m;
    let p1 = xy * xy + xz * xz + yz * yz;
    if p1 == 0.0 {
        let mut e = [xx, yy, zz];
        e.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return e;
    }
    let q = (xx + yy + zz) / 3.0;
    let p2 = (xx - q).powi(2) + (yy - q).powi(2) + (zz - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let inv_p = 1.0 / p;
    // B = (A - q I) / p
    let bxx = (xx - q) * inv_p;
    let byy = (yy - q) * inv_p;
    let bzz = (zz - q) * inv_p;
    let bxy = xy * inv_p;
    let bxz = xz * inv_p;
    let byz = yz * inv_p;
    let det_b = bxx * (byy * bzz - byz * byz) - bxy * (bxy * bzz - byz * bxz)
        + bxz * (bxy * byz - byy * bxz);
    let r = (det_b / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut e = [e3, e2, e1];
    e.sort_by(|a, b| a.partial_cmp(b).unwrap());
    e
}

/// Largest-eigenvalue direction of a symmetric 3x3 scatter, by power
/// iteration. Returns `None` when the scatter is (near) zero.
pub(crate) fn principal_axis_3d(m: [f64; 6]) -> Option<Vec3> {
    let [xx, xy, xz, yy, yz, zz] = m;
    let scale = xx.abs() + yy.abs() + zz.abs();
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    let mul = |v: Vec3| {
        Vec3::new(
            xx * v.x + xy * v.y + xz * v.z,
            xy * v.x + yy * v.y + yz * v.z,
            xz * v.x + yz * v.y + zz * v.z,
        )
    };
    // Deterministic start that is unlikely to be orthogonal to the axis.
    let mut v = Vec3::new(1.0, 0.5, 0.25).normalized().unwrap();
    for _ in 0..64 {
        let w = mul(v);
        match w.normalized() {
            Some(u) => {
                let converged = (u - v).norm() < 1e-14 || (u + v).norm() < 1e-14;
                v = u;
                if converged {
                    break;
                }
            }
            None => return None,
        }
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_axes_are_orthonormal_and_y_up() {
        let f = PlaneFrame::from_normal(Vec3::ZERO, Vec3::new(0.0, 1.0, 0.0)).unwrap();
        assert!(f.is_orthonormal(1e-12));
        assert!(f.axis_y.z > 0.0);
        assert!(f.axis_x.z == 0.0);

        let tilted = Vec3::new(0.3, 0.9, 0.2).normalized().unwrap();
        let f = PlaneFrame::from_normal(Vec3::new(1.0, 2.0, 3.0), tilted).unwrap();
        assert!(f.is_orthonormal(1e-12));
        assert!(f.axis_y.z > 0.0);
        assert!(f.axis_x.z.abs() < 1e-15);
    }

    #[test]
    fn project_unproject_round_trip() {
        let f = PlaneFrame::from_normal(Vec3::new(5.0, -2.0, 1.0), Vec3::new(1.0, 2.0, 0.0))
            .unwrap();
        let p = f.unproject(3.25, -1.5);
        let (u, v, w) = f.project(p);
        assert!((u - 3.25).abs() < 1e-12);
        assert!((v + 1.5).abs() < 1e-12);
        assert!(w.abs() < 1e-12);
    }

    #[test]
    fn vertical_normal_rejected() {
        assert!(PlaneFrame::from_normal(Vec3::ZERO, Vec3::new(0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn sym3_eigenvalues_diagonal_and_known() {
        let e = sym3_eigenvalues([3.0, 0.0, 0.0, 1.0, 0.0, 2.0]);
        assert_eq!(e, [1.0, 2.0, 3.0]);

        // [[2,1,0],[1,2,0],[0,0,5]] has eigenvalues 1, 3, 5.
        let e = sym3_eigenvalues([2.0, 1.0, 0.0, 2.0, 0.0, 5.0]);
        assert!((e[0] - 1.0).abs() < 1e-12);
        assert!((e[1] - 3.0).abs() < 1e-12);
        assert!((e[2] - 5.0).abs() < 1e-12);
    }
}
