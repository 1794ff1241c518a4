use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::Normalization;
use crate::error::{Result, WarpadError};

/// Sidecar written next to an exported model file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportManifest {
    pub backbone_id: String,
    pub input_size: usize,
    pub embedding_dims: usize,
    pub normalization: Normalization,
    /// Lowercase hex SHA-256 of the model file.
    pub file_digest: String,
}

impl ExportManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| {
            WarpadError::Backend(format!("cannot read manifest {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|e| {
            WarpadError::Backend(format!("malformed manifest {}: {e}", path.display()))
        })
    }

    /// `model.onnx` -> `model.json`.
    pub fn sidecar_path(model: &Path) -> PathBuf {
        model.with_extension("json")
    }

    pub fn find_for(model: &Path) -> Result<Option<Self>> {
        let p = Self::sidecar_path(model);
        if p.is_file() {
            Self::load(&p).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn file_digest_of(path: &Path) -> Result<String> {
        let bytes = fs::read(path)
            .map_err(|e| WarpadError::Backend(format!("cannot read {}: {e}", path.display())))?;
        Ok(hex::encode(Sha256::digest(&bytes)))
    }

    /// Checks the model file hash against the recorded digest.
    pub fn verify_file(&self, model: &Path) -> Result<()> {
        let actual = Self::file_digest_of(model)?;
        if !actual.eq_ignore_ascii_case(&self.file_digest) {
            return Err(WarpadError::Backend(format!(
                "{} has digest {actual}, manifest expects {}",
                model.display(),
                self.file_digest
            )));
        }
        Ok(())
    }
}
