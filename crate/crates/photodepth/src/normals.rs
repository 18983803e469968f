//! Surface normals from a depth map.

use nalgebra::Vector3;

use crate::camera::CameraIntrinsics;
use crate::image::{DepthMap, Grid, Mask, NormalMap};

/// Per-pixel unit normals from the cross product of tangent vectors of the
/// backprojected surface.
///
/// Central differences where both neighbors along an axis are masked,
/// one-sided differences at mask borders; pixels with no masked neighbor
/// along either axis are invalidated. Normals point toward the camera
/// (`n_z < 0`); pixels whose normal ends up facing away (grazing artifacts)
/// are invalidated as well.
pub fn normals_from_depth(depth: &DepthMap, intrinsics: &CameraIntrinsics) -> NormalMap {
    let (w, h) = (depth.width(), depth.height());
    let point = |u: usize, v: usize| intrinsics.backproject(u as f64, v as f64, *depth.depth.get(u, v));

    let mut normals = Grid::new(w, h, Vector3::zeros());
    let mut mask = Mask::new(w, h, false);

    for v in 0..h {
        for u in 0..w {
            if !depth.mask.is_set(u, v) {
                continue;
            }
            let tangent = |a: Option<(usize, usize)>, b: Option<(usize, usize)>| -> Option<Vector3<f64>> {
                let valid = |p: Option<(usize, usize)>| p.filter(|&(x, y)| depth.mask.is_set(x, y));
                match (valid(a), valid(b)) {
                    (Some(pa), Some(pb)) => Some((point(pb.0, pb.1) - point(pa.0, pa.1)) / 2.0),
                    (Some(pa), None) => Some(point(u, v) - point(pa.0, pa.1)),
                    (None, Some(pb)) => Some(point(pb.0, pb.1) - point(u, v)),
                    (None, None) => None,
                }
            };
            let left = (u > 0).then(|| (u - 1, v));
            let right = (u + 1 < w).then(|| (u + 1, v));
            let up = (v > 0).then(|| (u, v - 1));
            let down = (v + 1 < h).then(|| (u, v + 1));

            let (tu, tv) = match (tangent(left, right), tangent(up, down)) {
                (Some(tu), Some(tv)) => (tu, tv),
                _ => continue,
            };
            let n = tu.cross(&tv);
            let len = n.norm();
            if len < 1e-15 {
                continue;
            }
            // tu × tv points along +z for a fronto-parallel plane; flip so
            // visible surfaces face the camera.
            let n = -n / len;
            if n.z >= -1e-6 {
                continue;
            }
            normals.set(u, v, n);
            mask.set(u, v, true);
        }
    }
    NormalMap::new(normals, mask)
}
