use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::Aggregation;
use crate::embedder::EmbedderConfig;
use crate::error::{Result, WarpadError};
use crate::imageops::patch_count;
use crate::wavelet::WaveletSpec;

fn default_alpha() -> f64 {
    0.1
}

fn default_d_rescale() -> usize {
    896
}

fn default_d_patch() -> usize {
    224
}

fn default_embedder() -> EmbedderConfig {
    EmbedderConfig::test(default_d_patch())
}

/// Every knob that influences a score. Its digest tags each output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorConfig {
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_d_rescale")]
    pub d_rescale: usize,
    #[serde(default = "default_d_patch")]
    pub d_patch: usize,
    #[serde(default)]
    pub aggregation: Aggregation,
    #[serde(default)]
    pub wavelet: WaveletSpec,
    /// Clamp `x - alpha * HF(x)` to `[0, 1]` before embedding.
    #[serde(default)]
    pub clip_perturbed: bool,
    #[serde(default = "default_embedder")]
    pub embedder: EmbedderConfig,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            alpha: default_alpha(),
            d_rescale: default_d_rescale(),
            d_patch: default_d_patch(),
            aggregation: Aggregation::Mean,
            wavelet: WaveletSpec::default(),
            clip_perturbed: false,
            embedder: default_embedder(),
        }
    }
}

impl DetectorConfig {
    pub fn with_embedder(embedder: EmbedderConfig) -> Self {
        DetectorConfig {
            d_patch: embedder.input_size,
            embedder,
            ..Default::default()
        }
    }

    pub fn n_patch(&self) -> Result<usize> {
        patch_count(self.d_rescale, self.d_patch)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(WarpadError::config(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        self.n_patch()?;
        if self.d_patch != self.embedder.input_size {
            return Err(WarpadError::config(format!(
                "d_patch {} must equal the embedder input_size {}",
                self.d_patch, self.embedder.input_size
            )));
        }
        self.wavelet.validate_for(self.d_patch, self.d_patch)?;
        self.embedder.validate()
    }

    /// Lowercase hex SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&json))
    }
}
