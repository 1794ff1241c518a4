use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{DetectorConfig, ScoreRecord};
use crate::embedder::{cosine_similarity, Embedder};
use crate::error::{Result, WarpadError};
use crate::imageops::{rescale, rescale_n_patchify, PatchGrid};
use crate::scalar::Scalar;
use crate::tensor::ImageTensor;
use crate::wavelet::high_frequency_component;

/// `x - alpha * HF(x)`, optionally clamped to `[0, 1]`.
pub fn perturb<T: Scalar>(x: &ImageTensor<T>, cfg: &DetectorConfig) -> Result<ImageTensor<T>> {
    let hf = high_frequency_component(x, &cfg.wavelet)?;
    let out = x.sub_scaled(&hf, T::of(cfg.alpha))?;
    Ok(if cfg.clip_perturbed {
        out.clamp01()
    } else {
        out
    })
}

fn check_backend<T: Scalar, E: Embedder<T> + ?Sized>(cfg: &DetectorConfig, emb: &E) -> Result<()> {
    if emb.input_size() != cfg.d_patch {
        return Err(WarpadError::config(format!(
            "embedder takes {}px patches but d_patch is {}",
            emb.input_size(),
            cfg.d_patch
        )));
    }
    Ok(())
}

/// Embeds `[a0, b0, a1, b1, ...]` and returns `cos(a_i, b_i)` per pair.
///
/// Batches hold whole pairs whenever `batch_size >= 2`.
fn pair_cosines<T: Scalar, E: Embedder<T> + ?Sized>(
    interleaved: &[ImageTensor<T>],
    batch_size: usize,
    emb: &E,
) -> Result<Vec<f64>> {
    debug_assert!(interleaved.len().is_multiple_of(2));
    let step = if batch_size >= 2 {
        batch_size - batch_size % 2
    } else {
        1
    };
    let mut vecs = Vec::with_capacity(interleaved.len());
    for chunk in interleaved.chunks(step) {
        let out = emb.embed_batch(chunk)?;
        if out.len() != chunk.len() {
            return Err(WarpadError::Backend(format!(
                "{} returned {} embeddings for {} patches",
                emb.name(),
                out.len(),
                chunk.len()
            )));
        }
        vecs.extend(out);
    }
    vecs.chunks_exact(2)
        .map(|p| cosine_similarity(&p[0], &p[1]))
        .collect()
}

/// Cosine similarity between the embeddings of a patch and its HF-perturbed copy.
pub fn hfwav_score<T: Scalar, E: Embedder<T> + ?Sized>(
    patch: &ImageTensor<T>,
    cfg: &DetectorConfig,
    emb: &E,
) -> Result<f64> {
    Ok(hfwav_patch_scores(std::slice::from_ref(patch), cfg, emb)?[0])
}

/// [`hfwav_score`] for many patches, batched through the embedder.
pub fn hfwav_patch_scores<T: Scalar, E: Embedder<T> + ?Sized>(
    patches: &[ImageTensor<T>],
    cfg: &DetectorConfig,
    emb: &E,
) -> Result<Vec<f64>> {
    check_backend(cfg, emb)?;
    let mut interleaved = Vec::with_capacity(2 * patches.len());
    for p in patches {
        if p.dims() != (3, cfg.d_patch, cfg.d_patch) {
            return Err(WarpadError::validation(format!(
                "patch has shape {:?}, expected (3, {d}, {d})",
                p.dims(),
                d = cfg.d_patch
            )));
        }
        interleaved.push(p.clone());
        interleaved.push(perturb(p, cfg)?);
    }
    pair_cosines(&interleaved, cfg.embedder.batch_size, emb)
}

/// Rescale, tile, score every patch and aggregate.
pub fn warpad_score<T: Scalar, E: Embedder<T> + ?Sized>(
    x: &ImageTensor<T>,
    image_id: &str,
    cfg: &DetectorConfig,
    emb: &E,
) -> Result<ScoreRecord> {
    cfg.validate()?;
    let grid = rescale_n_patchify(x, cfg.d_rescale, cfg.d_patch)?;
    let scores = hfwav_patch_scores(&grid.patches, cfg, emb)?;
    ScoreRecord::from_patch_scores(image_id, scores, cfg.aggregation, cfg.digest())
}

/// Units of the RIGID noise level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaUnits {
    /// Fraction of the `[0, 1]` pixel range.
    #[default]
    Unit,
    /// 8-bit levels, divided by 255.
    EightBit,
}

impl SigmaUnits {
    pub fn to_unit(self, sigma: f64) -> f64 {
        match self {
            SigmaUnits::Unit => sigma,
            SigmaUnits::EightBit => sigma / 255.0,
        }
    }
}

/// Standard normal samples drawn from `ChaCha8Rng(seed)` in storage order.
pub fn gaussian_field<T: Scalar>(
    channels: usize,
    height: usize,
    width: usize,
    seed: u64,
) -> ImageTensor<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = ImageTensor::zeros(channels, height, width);
    for v in out.data_mut() {
        let z: f64 = StandardNormal.sample(&mut rng);
        *v = T::of(z);
    }
    out
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(WarpadError::validation(format!(
            "noise sigma must be finite and >= 0, got {sigma}"
        )));
    }
    Ok(())
}

fn add_noise<T: Scalar>(x: &ImageTensor<T>, sigma: f64, seed: u64) -> Result<ImageTensor<T>> {
    if sigma == 0.0 {
        return Ok(x.clone());
    }
    let (c, h, w) = x.dims();
    x.add_scaled(&gaussian_field(c, h, w, seed), T::of(sigma))
}

/// Baseline: cosine between `rescale(x, d_patch)` and the same image plus
/// `sigma * eps`, `eps ~ N(0, 1)` seeded. `sigma` is in `[0, 1]` pixel units.
pub fn rigid_score<T: Scalar, E: Embedder<T> + ?Sized>(
    x: &ImageTensor<T>,
    sigma: f64,
    seed: u64,
    cfg: &DetectorConfig,
    emb: &E,
) -> Result<f64> {
    check_sigma(sigma)?;
    check_backend(cfg, emb)?;
    let base = rescale(x, cfg.d_patch)?;
    let noisy = add_noise(&base, sigma, seed)?;
    Ok(pair_cosines(&[base, noisy], cfg.embedder.batch_size, emb)?[0])
}

/// The baseline applied per patch: noise is drawn once over the rescaled
/// image, then clean and noisy images are tiled identically.
pub fn rigid_patch_score<T: Scalar, E: Embedder<T> + ?Sized>(
    x: &ImageTensor<T>,
    image_id: &str,
    sigma: f64,
    seed: u64,
    cfg: &DetectorConfig,
    emb: &E,
) -> Result<ScoreRecord> {
    check_sigma(sigma)?;
    cfg.validate()?;
    check_backend(cfg, emb)?;
    let base = rescale(x, cfg.d_rescale)?;
    let noisy = add_noise(&base, sigma, seed)?;
    let clean = PatchGrid::tile(&base, cfg.d_patch)?;
    let dirty = PatchGrid::tile(&noisy, cfg.d_patch)?;
    let interleaved: Vec<_> = clean
        .patches
        .into_iter()
        .zip(dirty.patches)
        .flat_map(|(a, b)| [a, b])
        .collect();
    let scores = pair_cosines(&interleaved, cfg.embedder.batch_size, emb)?;
    ScoreRecord::from_patch_scores(image_id, scores, cfg.aggregation, cfg.digest())
}

/// Which score an evaluation computes per image.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScoreMethod {
    #[default]
    Warpad,
    /// Additive-noise baseline on the whole image rescaled to `d_patch`.
    Rigid { sigma: f64 },
    /// Additive-noise baseline over the rescaled-and-tiled patches.
    RigidPatch { sigma: f64 },
}

impl ScoreMethod {
    /// Digest stamped on records: the config digest for the main score,
    /// extended with the method for baselines.
    pub fn digest(&self, cfg: &DetectorConfig) -> String {
        use sha2::{Digest, Sha256};
        match self {
            ScoreMethod::Warpad => cfg.digest(),
            other => {
                let mut h = Sha256::new();
                h.update(cfg.digest().as_bytes());
                h.update(serde_json::to_vec(other).expect("method serializes"));
                hex::encode(h.finalize())
            }
        }
    }

    pub fn score<T: Scalar, E: Embedder<T> + ?Sized>(
        &self,
        x: &ImageTensor<T>,
        image_id: &str,
        noise_seed: u64,
        cfg: &DetectorConfig,
        emb: &E,
    ) -> Result<ScoreRecord> {
        match *self {
            ScoreMethod::Warpad => warpad_score(x, image_id, cfg, emb),
            ScoreMethod::Rigid { sigma } => {
                cfg.validate()?;
                let s = rigid_score(x, sigma, noise_seed, cfg, emb)?;
                ScoreRecord::from_patch_scores(image_id, vec![s], cfg.aggregation, self.digest(cfg))
            }
            ScoreMethod::RigidPatch { sigma } => {
                let mut rec = rigid_patch_score(x, image_id, sigma, noise_seed, cfg, emb)?;
                rec.config_digest = self.digest(cfg);
                Ok(rec)
            }
        }
    }
}
