//! Embedding backends: the feature extractor applied to every patch.
//!
//! Callers always hand over `[0, 1]` pixels; each backend applies the
//! configured per-channel mean/std normalization itself.

mod config;
mod counting;
mod manifest;
#[cfg(feature = "onnx")]
mod onnx;
mod remote;
mod test_backend;
mod wire;

use std::sync::Arc;

pub use config::{BackendKind, EmbedderConfig, Normalization, MODEL_DIR_ENV};
pub use counting::CountingEmbedder;
pub use manifest::ExportManifest;
#[cfg(feature = "onnx")]
pub use onnx::OnnxEmbedder;
pub use remote::RemoteEmbedder;
pub use test_backend::TestEmbedder;
pub use wire::{decode_f32, encode_f32, EmbedRequest, EmbedResponse, ErrorResponse};

use crate::error::{Result, WarpadError};
use crate::scalar::Scalar;
use crate::tensor::ImageTensor;

/// A feature vector produced by a backend.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVector {
    data: Vec<f64>,
}

impl EmbeddingVector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(WarpadError::Backend(format!(
                "embedding has a non-finite value at index {i}"
            )));
        }
        Ok(EmbeddingVector { data })
    }

    pub fn dims(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        EmbeddingVector {
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }
}

/// The `f_M` of the detector: maps `input_size x input_size x 3` patches to vectors.
pub trait Embedder<T: Scalar>: Send + Sync {
    fn input_size(&self) -> usize;

    /// One vector per patch, in order.
    fn embed_batch(&self, patches: &[ImageTensor<T>]) -> Result<Vec<EmbeddingVector>>;

    fn name(&self) -> &str;
}

impl<T: Scalar, E: Embedder<T> + ?Sized> Embedder<T> for Arc<E> {
    fn input_size(&self) -> usize {
        (**self).input_size()
    }

    fn embed_batch(&self, patches: &[ImageTensor<T>]) -> Result<Vec<EmbeddingVector>> {
        (**self).embed_batch(patches)
    }

    fn name(&self) -> &str {
        (**self).name()
    }
}

/// Rejects patches of the wrong shape or with non-finite values.
pub fn validate_patches<T: Scalar>(patches: &[ImageTensor<T>], input_size: usize) -> Result<()> {
    for (i, p) in patches.iter().enumerate() {
        if p.dims() != (3, input_size, input_size) {
            return Err(WarpadError::validation(format!(
                "patch {i} has shape {:?}, backend expects (3, {input_size}, {input_size})",
                p.dims()
            )));
        }
        p.ensure_finite()?;
    }
    Ok(())
}

/// Cosine similarity in double precision, clamped to `[-1, 1]`.
pub fn cosine_similarity(a: &EmbeddingVector, b: &EmbeddingVector) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(WarpadError::validation(format!(
            "cannot compare embeddings of {} and {} dims",
            a.dims(),
            b.dims()
        )));
    }
    let sq = |v: &EmbeddingVector| v.data.iter().map(|x| x * x).sum::<f64>();
    let (sa, sb) = (sq(a), sq(b));
    if sa == 0.0 || sb == 0.0 {
        return Err(WarpadError::DegenerateInput(
            "zero-norm embedding (broken backend or all-zero input)".into(),
        ));
    }
    let dot: f64 = a.data.iter().zip(&b.data).map(|(x, y)| x * y).sum();
    // one square root keeps cos(a, a) exactly 1
    let denom = match sa * sb {
        p if p.is_normal() => p.sqrt(),
        _ => sa.sqrt() * sb.sqrt(),
    };
    Ok((dot / denom).clamp(-1.0, 1.0))
}

/// Instantiates the backend described by `cfg`.
pub fn build_embedder<T: Scalar>(cfg: &EmbedderConfig) -> Result<Arc<dyn Embedder<T>>> {
    cfg.validate()?;
    match cfg.backend {
        BackendKind::Test => Ok(Arc::new(TestEmbedder::from_config(cfg)?)),
        BackendKind::Remote => Ok(Arc::new(RemoteEmbedder::from_config(cfg)?)),
        BackendKind::ModelFile => build_model_file(cfg),
    }
}

#[cfg(feature = "onnx")]
fn build_model_file<T: Scalar>(cfg: &EmbedderConfig) -> Result<Arc<dyn Embedder<T>>> {
    Ok(Arc::new(OnnxEmbedder::from_config(cfg)?))
}

#[cfg(not(feature = "onnx"))]
fn build_model_file<T: Scalar>(cfg: &EmbedderConfig) -> Result<Arc<dyn Embedder<T>>> {
    let path = cfg.resolve_model_path()?;
    Err(WarpadError::Backend(format!(
        "cannot load {}: built without the `onnx` feature",
        path.display()
    )))
}
