//! Training-free detection of AI-generated images.
//!
//! An image is rescaled and tiled into patches; each patch is compared, in
//! the embedding space of a self-supervised backbone, with a copy perturbed
//! along its wavelet high-frequency component. Real photographs keep their
//! embedding under that perturbation better than generated images do.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the precision for the common cases.

pub mod embedder;
pub mod error;
pub mod eval;
pub mod imageops;
pub mod scalar;
pub mod scoring;
pub mod tensor;
pub mod wavelet;

pub use error::{Result, WarpadError};
pub use scalar::Scalar;
pub use tensor::{ImageTensor, Plane};

pub type ImageF32 = ImageTensor<f32>;
pub type ImageF64 = ImageTensor<f64>;
pub type PlaneF32 = Plane<f32>;
pub type PlaneF64 = Plane<f64>;
pub type PyramidF32 = wavelet::WaveletPyramid<f32>;
pub type PyramidF64 = wavelet::WaveletPyramid<f64>;
pub type PatchGridF32 = imageops::PatchGrid<f32>;
pub type PatchGridF64 = imageops::PatchGrid<f64>;
pub type DynEmbedderF32 = std::sync::Arc<dyn embedder::Embedder<f32>>;
pub type DynEmbedderF64 = std::sync::Arc<dyn embedder::Embedder<f64>>;
