use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WarpadError};

/// Default search directory for relative model paths.
pub const MODEL_DIR_ENV: &str = "WARPAD_MODEL_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    ModelFile,
    Remote,
    Test,
}

/// Per-channel `(x - mean) / std`, applied after `[0, 1]` scaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Normalization {
    pub mean: [f64; 3],
    pub std: [f64; 3],
}

impl Normalization {
    /// ImageNet statistics, the published preprocessing of DINOv2 backbones.
    pub const IMAGENET: Normalization = Normalization {
        mean: [0.485, 0.456, 0.406],
        std: [0.229, 0.224, 0.225],
    };

    pub const IDENTITY: Normalization = Normalization {
        mean: [0.0; 3],
        std: [1.0; 3],
    };

    #[inline]
    pub fn apply(&self, channel: usize, v: f64) -> f64 {
        (v - self.mean[channel]) / self.std[channel]
    }
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization::IMAGENET
    }
}

fn default_input_size() -> usize {
    224
}

fn default_batch_size() -> usize {
    32
}

fn default_max_in_flight() -> usize {
    4
}

fn default_timeout_secs() -> u64 {
    120
}

fn default_retries() -> u32 {
    2
}

fn default_test_dims() -> usize {
    64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbedderConfig {
    pub backend: BackendKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint: Option<String>,
    #[serde(default = "default_input_size")]
    pub input_size: usize,
    #[serde(default)]
    pub normalization: Normalization,
    #[serde(default = "default_batch_size")]
    pub batch_size: usize,
    /// Checkpoint identity recorded for provenance (e.g. `dinov2_vitl14`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoint: Option<String>,
    /// Remote backend: concurrent request limit.
    #[serde(default = "default_max_in_flight")]
    pub max_in_flight: usize,
    #[serde(default = "default_timeout_secs")]
    pub timeout_secs: u64,
    #[serde(default = "default_retries")]
    pub retries: u32,
    /// Test backend: output width.
    #[serde(default = "default_test_dims")]
    pub test_dims: usize,
    /// Test backend: projection seed.
    #[serde(default)]
    pub test_seed: u64,
}

impl EmbedderConfig {
    pub fn new(backend: BackendKind) -> Self {
        EmbedderConfig {
            backend,
            model_path: None,
            endpoint: None,
            input_size: default_input_size(),
            normalization: Normalization::default(),
            batch_size: default_batch_size(),
            checkpoint: None,
            max_in_flight: default_max_in_flight(),
            timeout_secs: default_timeout_secs(),
            retries: default_retries(),
            test_dims: default_test_dims(),
            test_seed: 0,
        }
    }

    /// Deterministic linear test backend with identity normalization.
    pub fn test(input_size: usize) -> Self {
        EmbedderConfig {
            input_size,
            normalization: Normalization::IDENTITY,
            ..Self::new(BackendKind::Test)
        }
    }

    pub fn model_file(path: impl Into<PathBuf>) -> Self {
        EmbedderConfig {
            model_path: Some(path.into()),
            checkpoint: Some("dinov2_vitl14".into()),
            ..Self::new(BackendKind::ModelFile)
        }
    }

    pub fn remote(endpoint: impl Into<String>) -> Self {
        EmbedderConfig {
            endpoint: Some(endpoint.into()),
            ..Self::new(BackendKind::Remote)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.input_size == 0 {
            return Err(WarpadError::config("embedder input_size must be positive"));
        }
        if self.batch_size == 0 {
            return Err(WarpadError::config(
                "embedder batch_size must be at least 1",
            ));
        }
        if self
            .normalization
            .std
            .iter()
            .any(|s| *s == 0.0 || !s.is_finite())
            || self.normalization.mean.iter().any(|m| !m.is_finite())
        {
            return Err(WarpadError::config(
                "normalization needs finite means and non-zero stds",
            ));
        }
        match self.backend {
            BackendKind::ModelFile if self.model_path.is_none() => Err(WarpadError::config(
                "backend model_file requires model_path",
            )),
            BackendKind::Remote if self.endpoint.is_none() => {
                Err(WarpadError::config("backend remote requires endpoint"))
            }
            BackendKind::Remote if self.max_in_flight == 0 => {
                Err(WarpadError::config("max_in_flight must be at least 1"))
            }
            BackendKind::Test if self.test_dims == 0 => {
                Err(WarpadError::config("test_dims must be at least 1"))
            }
            _ => Ok(()),
        }
    }

    /// Resolves `model_path`, falling back to `$WARPAD_MODEL_DIR` for relative paths.
    pub fn resolve_model_path(&self) -> Result<PathBuf> {
        let path = self
            .model_path
            .as_ref()
            .ok_or_else(|| WarpadError::config("backend model_file requires model_path"))?;
        if path.exists() {
            return Ok(path.clone());
        }
        if path.is_relative() {
            if let Some(dir) = std::env::var_os(MODEL_DIR_ENV) {
                let candidate = PathBuf::from(dir).join(path);
                if candidate.exists() {
                    return Ok(candidate);
                }
            }
        }
        Err(WarpadError::Backend(format!(
            "model file not found: {}",
            path.display()
        )))
    }
}
