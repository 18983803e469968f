//! Depth-map refinement and albedo recovery from posed RGB-D key-frame
//! sequences of a rigidly moving Lambertian object under unknown natural
//! illumination.
//!
//! The object's rigid motion changes how the fixed environment lights each
//! surface point, which turns an ordinary RGB-D sequence into a photometric
//! stereo problem: per-pixel surface normals and per-channel albedo become
//! recoverable without albedo priors or smoothness regularization. The
//! library implements the full batch pipeline:
//!
//! 1. [`matching`] — lighting-insensitive subpixel correspondences from the
//!    reference frame into every key frame (rigid warp, chromaticity-normalized
//!    NCC search, reliability filtering, control-lattice deformation).
//! 2. [`lighting`] — estimation of a second-order (quadratic-in-normal)
//!    lighting model from albedo-cancelling intensity ratios.
//! 3. [`recover`] — per-pixel expectation-maximization over normal, albedo,
//!    noise level and an outlier state, robust to cast shadows and
//!    non-Lambertian observations.
//! 4. [`integrate`] — fusion of the recovered normal map with the coarse
//!    depth map into a detail-enhanced depth map and mesh.
//!
//! [`synth`] renders ground-truth sequences of analytic Lambertian surfaces
//! under known lighting and provides the controlled degradations
//! (over-smoothed depth, salt-and-pepper outlier frames, pose perturbation)
//! used throughout the test suite.
//!
//! # Coordinate conventions
//!
//! Pixel `(u, v) = (column, row)` with the origin at the top-left corner.
//! Camera coordinates are right-handed with `+z` pointing into the scene;
//! depth maps store z-depth (not ray length) in meters. Surface normals of
//! visible points face the camera, so a fronto-parallel plane has normal
//! `(0, 0, -1)`. Poses map reference-frame coordinates into frame-k
//! coordinates: `X_k = R_k * X_ref + T_k`.
//!
//! # Quick start
//!
//! ```no_run
//! use photodepth::pipeline::{cmd_pipeline, cmd_synth, PipelineOptions, SynthOptions};
//!
//! # fn main() -> Result<(), photodepth::pipeline::PipelineError> {
//! cmd_synth(&SynthOptions::default(), "data/bumpy".as_ref())?;
//! let report = cmd_pipeline(
//!     "data/bumpy".as_ref(),
//!     &Default::default(),
//!     &PipelineOptions::default(),
//!     "out/bumpy".as_ref(),
//! )?;
//! println!("mean normal error: {:?} deg", report.eval.map(|e| e.normal_mean_deg));
//! # Ok(())
//! # }
//! ```
//!
//! Each major capability also ships as a runnable example; see the
//! `examples/` directory (`cargo run --release -p photodepth --example
//! full_pipeline`).

pub mod camera;
pub mod config;
pub mod dataset;
pub mod eval;
pub mod image;
pub mod integrate;
pub mod io;
pub mod lighting;
pub mod matching;
pub mod normals;
pub mod pipeline;
pub mod recover;
pub mod shading;
pub mod synth;

pub use camera::{CameraIntrinsics, ProjectError, Projection, RigidPose};
pub use image::{AlbedoMap, DepthMap, Grid, Mask, NormalMap, RadianceImage, Rgb, ScalarMap};
pub use shading::QuadraticLighting;
