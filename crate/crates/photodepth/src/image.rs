//! Dense per-pixel storage for radiance, depth, normal, and albedo maps.
//!
//! All maps are immutable after construction as far as the pipeline is
//! concerned; operations return new maps. Pixel `(u, v)` is column `u`, row
//! `v`, row-major storage.

use nalgebra::Vector3;
use thiserror::Error;

/// Linear RGB triple.
pub type Rgb = Vector3<f64>;

#[derive(Debug, Error, PartialEq)]
pub enum SampleError {
    #[error("sample position ({0}, {1}) outside image bounds")]
    OutOfBounds(f64, f64),
    #[error("no masked neighbor around ({0}, {1})")]
    Unsampleable(f64, f64),
}

/// Row-major H×W grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T: Clone> Grid<T> {
    pub fn new(width: usize, height: usize, fill: T) -> Self {
        Self { width, height, data: vec![fill; width * height] }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for v in 0..height {
            for u in 0..width {
                data.push(f(u, v));
            }
        }
        Self { width, height, data }
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), width * height, "grid data length mismatch");
        Self { width, height, data }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> &T {
        &self.data[v * self.width + u]
    }

    #[inline]
    pub fn get_mut(&mut self, u: usize, v: usize) -> &mut T {
        &mut self.data[v * self.width + u]
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize, value: T) {
        self.data[v * self.width + u] = value;
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    /// Row-major iteration over `(u, v, value)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let w = self.width;
        self.data.iter().enumerate().map(move |(i, t)| (i % w, i / w, t))
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Grid<U> {
        Grid { width: self.width, height: self.height, data: self.data.iter().map(f).collect() }
    }
}

/// Boolean validity mask.
pub type Mask = Grid<bool>;

impl Mask {
    pub fn count(&self) -> usize {
        self.data().iter().filter(|&&b| b).count()
    }

    #[inline]
    pub fn is_set(&self, u: usize, v: usize) -> bool {
        *self.get(u, v)
    }

    pub fn and(&self, other: &Mask) -> Mask {
        assert_eq!((self.width, self.height), (other.width, other.height));
        Grid {
            width: self.width,
            height: self.height,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a && *b).collect(),
        }
    }

    /// Pixels set in the mask, row-major order.
    pub fn pixels(&self) -> Vec<(usize, usize)> {
        self.iter().filter(|&(_, _, &m)| m).map(|(u, v, _)| (u, v)).collect()
    }
}

/// Per-pixel linear RGB intensities with an object mask.
#[derive(Debug, Clone, PartialEq)]
pub struct RadianceImage {
    pub pixels: Grid<Rgb>,
    pub mask: Mask,
}

impl RadianceImage {
    pub fn new(pixels: Grid<Rgb>, mask: Mask) -> Self {
        assert_eq!((pixels.width, pixels.height), (mask.width, mask.height));
        Self { pixels, mask }
    }

    pub fn width(&self) -> usize {
        self.pixels.width()
    }

    pub fn height(&self) -> usize {
        self.pixels.height()
    }

    /// Mask-weighted bilinear sample at subpixel `(x, y)`.
    ///
    /// Unmasked neighbors get zero weight and the remaining weights are
    /// renormalized; fails if all four neighbors are unmasked.
    pub fn sample_bilinear(&self, x: f64, y: f64) -> Result<Rgb, SampleError> {
        sample_bilinear_masked(&self.pixels, &self.mask, x, y)
    }
}

/// Mask-weighted bilinear interpolation over any vector-valued grid.
pub fn sample_bilinear_masked(
    grid: &Grid<Rgb>,
    mask: &Mask,
    x: f64,
    y: f64,
) -> Result<Rgb, SampleError> {
    let (w, h) = (grid.width(), grid.height());
    if !(x >= 0.0 && y >= 0.0 && x <= (w - 1) as f64 && y <= (h - 1) as f64) {
        return Err(SampleError::OutOfBounds(x, y));
    }
    // Clamp the cell so x == w-1 still has a valid (degenerate) cell.
    let u0 = (x.floor() as usize).min(w.saturating_sub(2));
    let v0 = (y.floor() as usize).min(h.saturating_sub(2));
    let dx = x - u0 as f64;
    let dy = y - v0 as f64;

    let mut acc = Rgb::zeros();
    let mut wsum = 0.0;
    for (du, dv, wgt) in [
        (0, 0, (1.0 - dx) * (1.0 - dy)),
        (1, 0, dx * (1.0 - dy)),
        (0, 1, (1.0 - dx) * dy),
        (1, 1, dx * dy),
    ] {
        let (uu, vv) = (u0 + du, v0 + dv);
        if uu < w && vv < h && mask.is_set(uu, vv) {
            acc += grid.get(uu, vv) * wgt;
            wsum += wgt;
        }
    }
    if wsum <= 0.0 {
        return Err(SampleError::Unsampleable(x, y));
    }
    Ok(acc / wsum)
}

/// Scalar bilinear sample with the same mask-weighting rules.
pub fn sample_bilinear_scalar(
    grid: &Grid<f64>,
    mask: &Mask,
    x: f64,
    y: f64,
) -> Result<f64, SampleError> {
    let (w, h) = (grid.width(), grid.height());
    if !(x >= 0.0 && y >= 0.0 && x <= (w - 1) as f64 && y <= (h - 1) as f64) {
        return Err(SampleError::OutOfBounds(x, y));
    }
    let u0 = (x.floor() as usize).min(w.saturating_sub(2));
    let v0 = (y.floor() as usize).min(h.saturating_sub(2));
    let dx = x - u0 as f64;
    let dy = y - v0 as f64;

    let mut acc = 0.0;
    let mut wsum = 0.0;
    for (du, dv, wgt) in [
        (0, 0, (1.0 - dx) * (1.0 - dy)),
        (1, 0, dx * (1.0 - dy)),
        (0, 1, (1.0 - dx) * dy),
        (1, 1, dx * dy),
    ] {
        let (uu, vv) = (u0 + du, v0 + dv);
        if uu < w && vv < h && mask.is_set(uu, vv) {
            acc += grid.get(uu, vv) * wgt;
            wsum += wgt;
        }
    }
    if wsum <= 0.0 {
        return Err(SampleError::Unsampleable(x, y));
    }
    Ok(acc / wsum)
}

/// Metric z-depth per pixel (meters) with validity mask.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthMap {
    pub depth: Grid<f64>,
    pub mask: Mask,
}

impl DepthMap {
    pub fn new(depth: Grid<f64>, mask: Mask) -> Self {
        assert_eq!((depth.width, depth.height), (mask.width, mask.height));
        Self { depth, mask }
    }

    pub fn width(&self) -> usize {
        self.depth.width()
    }

    pub fn height(&self) -> usize {
        self.depth.height()
    }
}

/// Unit surface normals in camera coordinates. Visible-surface normals point
/// toward the camera (`n_z < 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct NormalMap {
    pub normals: Grid<Vector3<f64>>,
    pub mask: Mask,
}

impl NormalMap {
    pub fn new(normals: Grid<Vector3<f64>>, mask: Mask) -> Self {
        assert_eq!((normals.width, normals.height), (mask.width, mask.height));
        Self { normals, mask }
    }

    pub fn width(&self) -> usize {
        self.normals.width()
    }

    pub fn height(&self) -> usize {
        self.normals.height()
    }

    /// Bilinear normal sample, renormalized to unit length.
    pub fn sample(&self, x: f64, y: f64) -> Result<Vector3<f64>, SampleError> {
        let n = sample_bilinear_masked(&self.normals, &self.mask, x, y)?;
        let len = n.norm();
        if len < 1e-9 {
            return Err(SampleError::Unsampleable(x, y));
        }
        Ok(n / len)
    }
}

/// Per-channel nonnegative reflectance.
#[derive(Debug, Clone, PartialEq)]
pub struct AlbedoMap {
    pub albedo: Grid<Rgb>,
    pub mask: Mask,
}

impl AlbedoMap {
    pub fn new(albedo: Grid<Rgb>, mask: Mask) -> Self {
        assert_eq!((albedo.width, albedo.height), (mask.width, mask.height));
        Self { albedo, mask }
    }

    pub fn width(&self) -> usize {
        self.albedo.width()
    }

    pub fn height(&self) -> usize {
        self.albedo.height()
    }
}

/// Generic masked scalar field (confidence maps, error maps).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarMap {
    pub values: Grid<f64>,
    pub mask: Mask,
}

impl ScalarMap {
    pub fn new(values: Grid<f64>, mask: Mask) -> Self {
        assert_eq!((values.width, values.height), (mask.width, mask.height));
        Self { values, mask }
    }
}
