//! Pinhole camera intrinsics, rigid poses, and the projective warp between
//! key frames.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Orthonormality / determinant tolerance for rotation validation.
const ROTATION_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum ProjectError {
    /// The transformed point lies on or behind the camera plane.
    #[error("transformed point has non-positive depth ({0})")]
    NonPositiveDepth(f64),
}

#[derive(Debug, Error)]
pub enum PoseError {
    #[error("rotation is not orthonormal (max deviation {0:.3e})")]
    NotOrthonormal(f64),
    #[error("rotation determinant is {0}, expected +1")]
    NotProperRotation(f64),
}

#[derive(Debug, Error)]
pub enum IntrinsicsError {
    #[error("focal lengths must be positive, got fx={fx}, fy={fy}")]
    NonPositiveFocal { fx: f64, fy: f64 },
    #[error("principal point ({cx}, {cy}) outside image {width}x{height}")]
    PrincipalPointOutside { cx: f64, cy: f64, width: usize, height: usize },
}

/// Pinhole projection parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: usize,
    pub height: usize,
}

impl CameraIntrinsics {
    pub fn new(
        fx: f64,
        fy: f64,
        cx: f64,
        cy: f64,
        width: usize,
        height: usize,
    ) -> Result<Self, IntrinsicsError> {
        if !(fx > 0.0 && fy > 0.0) {
            return Err(IntrinsicsError::NonPositiveFocal { fx, fy });
        }
        if !(0.0 <= cx && cx < width as f64 && 0.0 <= cy && cy < height as f64) {
            return Err(IntrinsicsError::PrincipalPointOutside { cx, cy, width, height });
        }
        Ok(Self { fx, fy, cx, cy, width, height })
    }

    /// Backproject pixel `(u, v)` at z-depth `depth` into camera coordinates.
    pub fn backproject(&self, u: f64, v: f64, depth: f64) -> Vector3<f64> {
        Vector3::new(
            depth * (u - self.cx) / self.fx,
            depth * (v - self.cy) / self.fy,
            depth,
        )
    }

    /// Perspective projection of a camera-space point (z > 0 assumed).
    pub fn project(&self, p: &Vector3<f64>) -> (f64, f64) {
        (
            self.fx * p.x / p.z + self.cx,
            self.fy * p.y / p.z + self.cy,
        )
    }

    /// True when `(u, v)` lies inside the image rectangle.
    pub fn contains(&self, u: f64, v: f64) -> bool {
        u >= 0.0 && v >= 0.0 && u <= (self.width - 1) as f64 && v <= (self.height - 1) as f64
    }
}

/// Rigid transform mapping reference-frame coordinates into another frame:
/// `X_k = R * X_ref + T`.
#[derive(Debug, Clone, PartialEq)]
pub struct RigidPose {
    pub rotation: Matrix3<f64>,
    pub translation: Vector3<f64>,
}

impl RigidPose {
    pub fn identity() -> Self {
        Self { rotation: Matrix3::identity(), translation: Vector3::zeros() }
    }

    /// Validates `RᵀR = I` and `det R = 1` before accepting the rotation.
    pub fn new(rotation: Matrix3<f64>, translation: Vector3<f64>) -> Result<Self, PoseError> {
        let gram = rotation.transpose() * rotation;
        let dev = (gram - Matrix3::identity()).abs().max();
        if dev > ROTATION_TOL {
            return Err(PoseError::NotOrthonormal(dev));
        }
        let det = rotation.determinant();
        if (det - 1.0).abs() > ROTATION_TOL {
            return Err(PoseError::NotProperRotation(det));
        }
        Ok(Self { rotation, translation })
    }

    /// Rotation by `angle` radians about `axis` through the point `center`.
    pub fn rotation_about(axis: &Vector3<f64>, angle: f64, center: &Vector3<f64>) -> Self {
        let rotation = nalgebra::Rotation3::from_axis_angle(
            &nalgebra::Unit::new_normalize(*axis),
            angle,
        )
        .into_inner();
        let translation = center - rotation * center;
        Self { rotation, translation }
    }

    pub fn transform(&self, p: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * p + self.translation
    }

    pub fn inverse(&self) -> Self {
        let rotation = self.rotation.transpose();
        Self { rotation, translation: -(rotation * self.translation) }
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.rotation - Matrix3::identity()).abs().max() <= tol
            && self.translation.amax() <= tol
    }
}

/// Result of warping one pixel into another frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    /// Subpixel target coordinate `(u, v)`.
    pub q: (f64, f64),
    /// z-depth of the transformed point in the target frame.
    pub depth: f64,
    /// False when `q` falls outside the image rectangle.
    pub in_frame: bool,
}

/// Warp pixel `(u, v)` with z-depth `depth` from the reference frame into the
/// frame described by `pose`, returning the subpixel target coordinate and
/// the transformed depth.
pub fn project_pixel(
    u: f64,
    v: f64,
    depth: f64,
    intrinsics: &CameraIntrinsics,
    pose: &RigidPose,
) -> Result<Projection, ProjectError> {
    let p = intrinsics.backproject(u, v, depth);
    let t = pose.transform(&p);
    if t.z <= 0.0 {
        return Err(ProjectError::NonPositiveDepth(t.z));
    }
    let q = intrinsics.project(&t);
    Ok(Projection { q, depth: t.z, in_frame: intrinsics.contains(q.0, q.1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn test_intrinsics() -> CameraIntrinsics {
        CameraIntrinsics::new(100.0, 100.0, 64.0, 64.0, 128, 128).unwrap()
    }

    fn random_pose(rng: &mut ChaCha8Rng) -> RigidPose {
        let axis = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let angle = rng.random_range(-0.3..0.3);
        let rotation =
            nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), angle)
                .into_inner();
        let translation = Vector3::new(
            rng.random_range(-0.05..0.05),
            rng.random_range(-0.05..0.05),
            rng.random_range(-0.05..0.05),
        );
        RigidPose { rotation, translation }
    }

    #[test]
    fn identity_pose_is_identity_on_pixels() {
        let k = test_intrinsics();
        for &(u, v, d) in &[(64.0, 64.0, 2.0), (10.0, 100.0, 0.7), (127.0, 0.0, 5.3)] {
            let p = project_pixel(u, v, d, &k, &RigidPose::identity()).unwrap();
            assert_abs_diff_eq!(p.q.0, u, epsilon = 1e-12);
            assert_abs_diff_eq!(p.q.1, v, epsilon = 1e-12);
            assert_abs_diff_eq!(p.depth, d, epsilon = 1e-12);
        }
    }

    #[test]
    fn hand_computed_translation() {
        // Backproject (64,64,D=2) to (0,0,2), translate by (0.1,0,0), project:
        // 100*0.1/2 + 64 = 69.
        let k = test_intrinsics();
        let pose = RigidPose { rotation: Matrix3::identity(), translation: Vector3::new(0.1, 0.0, 0.0) };
        let p = project_pixel(64.0, 64.0, 2.0, &k, &pose).unwrap();
        assert_abs_diff_eq!(p.q.0, 69.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.q.1, 64.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.depth, 2.0, epsilon = 1e-12);
        assert!(p.in_frame);
    }

    #[test]
    fn point_on_camera_plane_is_an_error() {
        let k = test_intrinsics();
        let pose = RigidPose { rotation: Matrix3::identity(), translation: Vector3::new(0.0, 0.0, -2.0) };
        let err = project_pixel(64.0, 64.0, 2.0, &k, &pose).unwrap_err();
        assert_eq!(err, ProjectError::NonPositiveDepth(0.0));
    }

    #[test]
    fn out_of_frame_is_flagged_not_an_error() {
        let k = test_intrinsics();
        let pose = RigidPose { rotation: Matrix3::identity(), translation: Vector3::new(5.0, 0.0, 0.0) };
        let p = project_pixel(64.0, 64.0, 2.0, &k, &pose).unwrap();
        assert!(!p.in_frame);
    }

    #[test]
    fn projection_composes() {
        // Warping with P1 and then with P2∘P1⁻¹ must match warping once with P2.
        let k = test_intrinsics();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p1 = random_pose(&mut rng);
            let p2 = random_pose(&mut rng);
            let u = rng.random_range(20.0..108.0);
            let v = rng.random_range(20.0..108.0);
            let d = rng.random_range(1.0..3.0);

            let step1 = project_pixel(u, v, d, &k, &p1).unwrap();
            let rel = p2.compose(&p1.inverse());
            let step2 = project_pixel(step1.q.0, step1.q.1, step1.depth, &k, &rel).unwrap();
            let direct = project_pixel(u, v, d, &k, &p2).unwrap();

            assert_abs_diff_eq!(step2.q.0, direct.q.0, epsilon = 1e-6);
            assert_abs_diff_eq!(step2.q.1, direct.q.1, epsilon = 1e-6);
            assert_abs_diff_eq!(step2.depth, direct.depth, epsilon = 1e-9);
        }
    }

    #[test]
    fn pose_validation_rejects_non_rotations() {
        let scaled = Matrix3::identity() * 1.001;
        assert!(RigidPose::new(scaled, Vector3::zeros()).is_err());
        let mut reflected = Matrix3::identity();
        reflected[(0, 0)] = -1.0;
        assert!(RigidPose::new(reflected, Vector3::zeros()).is_err());
    }

    #[test]
    fn intrinsics_validation() {
        assert!(CameraIntrinsics::new(0.0, 1.0, 0.0, 0.0, 8, 8).is_err());
        assert!(CameraIntrinsics::new(10.0, 10.0, 8.0, 4.0, 8, 8).is_err());
        assert!(CameraIntrinsics::new(10.0, 10.0, 4.0, 4.0, 8, 8).is_ok());
    }
}
