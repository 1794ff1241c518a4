use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{validate_patches, Embedder, EmbedderConfig, EmbeddingVector, Normalization};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::tensor::ImageTensor;

/// Pixels per side fed to the projection; larger inputs are strided down.
const MAX_GRID: usize = 32;

/// Seeded Gaussian projection of strided, normalized pixels.
///
/// Feature `c * g * g + i * g + j` is channel `c` at pixel
/// `(i * stride, j * stride)`, where `g` is the sample grid side. Being linear,
/// it makes every score reproducible with a plain matrix-vector product.
#[derive(Debug, Clone)]
pub struct TestEmbedder {
    input_size: usize,
    stride: usize,
    grid: usize,
    dims: usize,
    normalization: Normalization,
    weights: Vec<f64>,
}

impl TestEmbedder {
    pub fn new(input_size: usize, dims: usize, seed: u64, normalization: Normalization) -> Self {
        let stride = input_size.div_ceil(MAX_GRID).max(1);
        let grid = input_size.div_ceil(stride);
        let features = 3 * grid * grid;
        let scale = 1.0 / (features as f64).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights = (0..dims * features)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                z * scale
            })
            .collect();
        TestEmbedder {
            input_size,
            stride,
            grid,
            dims,
            normalization,
            weights,
        }
    }

    pub fn from_config(cfg: &EmbedderConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self::new(
            cfg.input_size,
            cfg.test_dims,
            cfg.test_seed,
            cfg.normalization,
        ))
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn features(&self) -> usize {
        3 * self.grid * self.grid
    }

    /// Projection weight from feature `feature` to output `out`.
    pub fn weight(&self, out: usize, feature: usize) -> f64 {
        self.weights[out * self.features() + feature]
    }

    fn features_of<T: Scalar>(&self, p: &ImageTensor<T>) -> Vec<f64> {
        let mut f = Vec::with_capacity(self.features());
        for c in 0..3 {
            for i in 0..self.grid {
                for j in 0..self.grid {
                    let v = p.get(c, i * self.stride, j * self.stride).as_f64();
                    f.push(self.normalization.apply(c, v));
                }
            }
        }
        f
    }
}

impl<T: Scalar> Embedder<T> for TestEmbedder {
    fn input_size(&self) -> usize {
        self.input_size
    }

    fn embed_batch(&self, patches: &[ImageTensor<T>]) -> Result<Vec<EmbeddingVector>> {
        validate_patches(patches, self.input_size)?;
        let nf = self.features();
        patches
            .iter()
            .map(|p| {
                let f = self.features_of(p);
                let out = self
                    .weights
                    .chunks_exact(nf)
                    .map(|row| row.iter().zip(&f).map(|(w, x)| w * x).sum())
                    .collect();
                EmbeddingVector::new(out)
            })
            .collect()
    }

    fn name(&self) -> &str {
        "test"
    }
}
