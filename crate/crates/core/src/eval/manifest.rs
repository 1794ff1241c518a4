use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Result, WarpadError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FakeEntry {
    pub path: PathBuf,
    pub generator: String,
}

/// One real set and any number of generator-tagged fake sets.
///
/// Relative paths are resolved against the manifest's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetManifest {
    pub name: String,
    pub real: Vec<PathBuf>,
    pub fake: Vec<FakeEntry>,
    #[serde(default)]
    pub metadata: BTreeMap<String, serde_json::Value>,
    #[serde(skip)]
    base_dir: PathBuf,
    #[serde(skip)]
    source: Option<PathBuf>,
}

impl DatasetManifest {
    pub fn new(name: impl Into<String>, base_dir: impl Into<PathBuf>) -> Self {
        DatasetManifest {
            name: name.into(),
            real: Vec::new(),
            fake: Vec::new(),
            metadata: BTreeMap::new(),
            base_dir: base_dir.into(),
            source: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| WarpadError::ingestion(path, e))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let mut m = Self::from_json(&text, base).map_err(|e| WarpadError::ingestion(path, e))?;
        m.source = Some(path.to_path_buf());
        Ok(m)
    }

    pub fn from_json(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self> {
        let mut m: DatasetManifest = serde_json::from_str(text)?;
        m.base_dir = base_dir.into();
        m.validate()?;
        Ok(m)
    }

    pub fn base_dir(&self) -> &Path {
        &self.base_dir
    }

    /// The file the manifest was read from, if any.
    pub fn source(&self) -> Option<&Path> {
        self.source.as_deref()
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }

    /// Generator tags in sorted order.
    pub fn generators(&self) -> Vec<String> {
        self.fake
            .iter()
            .map(|f| f.generator.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.real.len() + self.fake.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<()> {
        if self.real.is_empty() || self.fake.is_empty() {
            return Err(WarpadError::validation(format!(
                "manifest {:?} needs at least one real and one fake image",
                self.name
            )));
        }
        if let Some(f) = self.fake.iter().find(|f| f.generator.trim().is_empty()) {
            return Err(WarpadError::validation(format!(
                "fake image {} has an empty generator tag",
                f.path.display()
            )));
        }
        let mut seen = HashSet::new();
        for p in self.real.iter().chain(self.fake.iter().map(|f| &f.path)) {
            if !seen.insert(self.resolve(p)) {
                return Err(WarpadError::validation(format!(
                    "manifest lists {} more than once",
                    p.display()
                )));
            }
        }
        Ok(())
    }
}
