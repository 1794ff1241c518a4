use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use warpad::embedder::{BackendKind, EmbedderConfig};
use warpad::scoring::{Aggregation, DetectorConfig};
use warpad::wavelet::WaveletSpec;
use warpad::{Result, WarpadError};

/// Model file looked up when no embedder is configured.
pub const DEFAULT_MODEL: &str = "dinov2_vitl14.onnx";

fn default_alpha() -> f64 {
    DetectorConfig::default().alpha
}

fn default_d_rescale() -> usize {
    DetectorConfig::default().d_rescale
}

fn default_embedder() -> EmbedderConfig {
    EmbedderConfig::model_file(DEFAULT_MODEL)
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("warpad-out")
}

/// `[detector]` table; `d_patch` defaults to the embedder input size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorSection {
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_d_rescale")]
    pub d_rescale: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_patch: Option<usize>,
    #[serde(default)]
    pub aggregation: Aggregation,
    #[serde(default)]
    pub wavelet: WaveletSpec,
    #[serde(default)]
    pub clip_perturbed: bool,
}

impl Default for DetectorSection {
    fn default() -> Self {
        DetectorSection {
            alpha: default_alpha(),
            d_rescale: default_d_rescale(),
            d_patch: None,
            aggregation: Aggregation::default(),
            wavelet: WaveletSpec::default(),
            clip_perturbed: false,
        }
    }
}

/// TOML run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    #[serde(default)]
    pub detector: DetectorSection,
    #[serde(default = "default_embedder")]
    pub embedder: EmbedderConfig,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

impl Default for RunConfigFile {
    fn default() -> Self {
        RunConfigFile {
            detector: DetectorSection::default(),
            embedder: default_embedder(),
            seed: 0,
            output_dir: default_output_dir(),
        }
    }
}

impl RunConfigFile {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| WarpadError::Config(e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| {
            WarpadError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::from_toml(&text)
            .map_err(|e| WarpadError::Config(format!("{}: {}", path.display(), strip(&e))))
    }

    /// Flag values win over file values.
    pub fn apply(&mut self, o: &Overrides) {
        if let Some(kind) = o.backend {
            if kind != self.embedder.backend {
                let mut fresh = match kind {
                    BackendKind::ModelFile => EmbedderConfig::model_file(DEFAULT_MODEL),
                    BackendKind::Remote => EmbedderConfig::new(BackendKind::Remote),
                    BackendKind::Test => EmbedderConfig::test(self.embedder.input_size),
                };
                fresh.input_size = self.embedder.input_size;
                fresh.batch_size = self.embedder.batch_size;
                self.embedder = fresh;
            }
        }
        if let Some(m) = &o.model {
            if o.backend.is_none() && self.embedder.backend != BackendKind::ModelFile {
                self.embedder = EmbedderConfig::model_file(m);
            }
            self.embedder.model_path = Some(m.clone());
        }
        if let Some(url) = &o.endpoint {
            if o.backend.is_none() && self.embedder.backend != BackendKind::Remote {
                self.embedder = EmbedderConfig::remote(url.clone());
            }
            self.embedder.endpoint = Some(url.clone());
        }
        if let Some(a) = o.alpha {
            self.detector.alpha = a;
        }
        if let Some(d) = o.d_rescale {
            self.detector.d_rescale = d;
        }
        if let Some(d) = o.d_patch {
            self.detector.d_patch = Some(d);
        }
        if let Some(a) = o.aggregation {
            self.detector.aggregation = a;
        }
        if let Some(w) = o.wavelet {
            self.detector.wavelet = w;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(d) = &o.output_dir {
            self.output_dir = d.clone();
        }
    }

    /// Merged detector config; an explicit `d_patch` also sets the embedder input size.
    pub fn detector_config(&self) -> Result<DetectorConfig> {
        let mut embedder = self.embedder.clone();
        if let Some(d) = self.detector.d_patch {
            embedder.input_size = d;
        }
        let cfg = DetectorConfig {
            alpha: self.detector.alpha,
            d_rescale: self.detector.d_rescale,
            d_patch: embedder.input_size,
            aggregation: self.detector.aggregation,
            wavelet: self.detector.wavelet,
            clip_perturbed: self.detector.clip_perturbed,
            embedder,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn strip(e: &WarpadError) -> String {
    match e {
        WarpadError::Config(m) => m.clone(),
        other => other.to_string(),
    }
}

/// Command-line values layered over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub backend: Option<BackendKind>,
    pub model: Option<PathBuf>,
    pub endpoint: Option<String>,
    pub alpha: Option<f64>,
    pub d_rescale: Option<usize>,
    pub d_patch: Option<usize>,
    pub aggregation: Option<Aggregation>,
    pub wavelet: Option<WaveletSpec>,
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
}

/// Provenance record written next to every output.
#[derive(Debug, Clone, Serialize)]
pub struct EffectiveConfig<'a> {
    pub detector: &'a DetectorConfig,
    pub config_digest: String,
    pub seed: u64,
    pub output_dir: &'a Path,
}

impl<'a> EffectiveConfig<'a> {
    pub fn new(detector: &'a DetectorConfig, file: &'a RunConfigFile) -> Self {
        EffectiveConfig {
            detector,
            config_digest: detector.digest(),
            seed: file.seed,
            output_dir: &file.output_dir,
        }
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = dir.join("effective_config.json");
        fs::write(&path, serde_json::to_string_pretty(self)?)?;
        Ok(path)
    }
}
