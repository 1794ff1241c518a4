use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{auroc, score_histogram, DatasetManifest, ScoreHistogram};
use crate::embedder::Embedder;
use crate::error::{Result, WarpadError};
use crate::imageops::{corrupt, load_image, CorruptionKind, CorruptionSpec};
use crate::scalar::Scalar;
use crate::scoring::{
    common_digest, write_jsonl, Aggregation, DetectorConfig, ScoreMethod, ScoreRecord,
};

/// Largest tolerated fraction of unreadable images.
pub const MAX_SKIP_FRACTION: f64 = 0.10;

#[derive(Debug, Clone, PartialEq)]
pub struct EvalOptions {
    pub corruption: Option<CorruptionSpec>,
    pub method: ScoreMethod,
    /// Base seed for every randomized step; recorded in the report.
    pub seed: u64,
    /// Worker threads; 0 uses the logical CPU count.
    pub jobs: usize,
    pub histogram_bins: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            corruption: None,
            method: ScoreMethod::Warpad,
            seed: 0,
            jobs: 0,
            histogram_bins: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FakeScore {
    pub generator: String,
    pub record: ScoreRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedImage {
    pub path: String,
    pub reason: String,
}

/// Per-image results of one scoring pass over a manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredDataset {
    pub real: Vec<ScoreRecord>,
    pub fake: Vec<FakeScore>,
    pub skipped: Vec<SkippedImage>,
}

impl ScoredDataset {
    /// Re-folds stored patch scores under another rule without re-embedding.
    pub fn reaggregate(&self, aggregation: Aggregation, config_digest: &str) -> Result<Self> {
        Ok(ScoredDataset {
            real: self
                .real
                .iter()
                .map(|r| r.reaggregate(aggregation, config_digest))
                .collect::<Result<_>>()?,
            fake: self
                .fake
                .iter()
                .map(|f| {
                    Ok(FakeScore {
                        generator: f.generator.clone(),
                        record: f.record.reaggregate(aggregation, config_digest)?,
                    })
                })
                .collect::<Result<_>>()?,
            skipped: self.skipped.clone(),
        })
    }

    pub fn real_scores(&self) -> Vec<f64> {
        self.real.iter().map(|r| r.score).collect()
    }

    pub fn fake_scores(&self) -> Vec<f64> {
        self.fake.iter().map(|f| f.record.score).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub dataset: String,
    pub config_digest: String,
    pub per_generator: BTreeMap<String, f64>,
    pub mean_auroc: f64,
    pub score_histograms: ScoreHistogram,
    pub corruption: Option<CorruptionSpec>,
    pub method: ScoreMethod,
    pub seed: u64,
    pub n_real: usize,
    pub n_fake: usize,
    pub skipped: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped_images: Vec<SkippedImage>,
    /// Effective configuration, echoed for provenance.
    pub config: DetectorConfig,
}

impl EvalReport {
    /// Lowercase hex SHA-256 of the serialized report.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(
            serde_json::to_vec(self).expect("report serializes"),
        ))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    /// Tab-separated `generator  auroc` lines plus the mean.
    pub fn table(&self) -> String {
        let mut out = String::from("generator\tauroc\n");
        for (g, a) in &self.per_generator {
            out.push_str(&format!("{g}\t{a:.6}\n"));
        }
        out.push_str(&format!("mean\t{:.6}\n", self.mean_auroc));
        out
    }
}

/// Seed for one image, stable across worker counts and dataset moves.
pub fn image_seed(base: u64, image_id: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(base.to_le_bytes());
    h.update(image_id.as_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("digest has 32 bytes"))
}

/// The corruption actually applied to `image_id`: noise gets a per-image seed.
pub fn corruption_for(spec: &CorruptionSpec, base_seed: u64, image_id: &str) -> CorruptionSpec {
    match spec.kind {
        CorruptionKind::GaussianNoise => {
            spec.with_seed(image_seed(spec.seed.unwrap_or(base_seed), image_id))
        }
        _ => *spec,
    }
}

enum Outcome {
    Scored(ScoreRecord),
    Skipped(SkippedImage),
}

fn score_one<T: Scalar, E: Embedder<T> + ?Sized>(
    manifest: &DatasetManifest,
    rel: &Path,
    cfg: &DetectorConfig,
    emb: &E,
    opts: &EvalOptions,
) -> Result<Outcome> {
    let id = rel.to_string_lossy().into_owned();
    let image = match load_image::<T>(&manifest.resolve(rel)) {
        Ok(img) => img,
        Err(e @ WarpadError::Ingestion { .. }) => {
            warn!("skipping {id}: {e}");
            return Ok(Outcome::Skipped(SkippedImage {
                path: id,
                reason: e.to_string(),
            }));
        }
        Err(e) => return Err(e),
    };
    let image = match &opts.corruption {
        Some(spec) => corrupt(&image, &corruption_for(spec, opts.seed, &id))?,
        None => image,
    };
    let noise_seed = image_seed(opts.seed, &format!("rigid:{id}"));
    Ok(Outcome::Scored(
        opts.method.score(&image, &id, noise_seed, cfg, emb)?,
    ))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| WarpadError::config(format!("cannot start worker pool: {e}")))
}

/// Scores every image of `manifest` once; unreadable images are skipped.
pub fn score_manifest<T: Scalar, E: Embedder<T> + ?Sized>(
    manifest: &DatasetManifest,
    cfg: &DetectorConfig,
    emb: &E,
    opts: &EvalOptions,
) -> Result<ScoredDataset> {
    manifest.validate()?;
    cfg.validate()?;
    if let Some(c) = &opts.corruption {
        c.validate()?;
    }
    let items: Vec<(&Path, Option<&str>)> = manifest
        .real
        .iter()
        .map(|p| (p.as_path(), None))
        .chain(
            manifest
                .fake
                .iter()
                .map(|f| (f.path.as_path(), Some(f.generator.as_str()))),
        )
        .collect();
    info!("scoring {} images from {:?}", items.len(), manifest.name);
    let outcomes: Vec<Result<Outcome>> = pool(opts.jobs)?.install(|| {
        items
            .par_iter()
            .map(|(p, _)| score_one(manifest, p, cfg, emb, opts))
            .collect()
    });

    let mut scored = ScoredDataset {
        real: Vec::new(),
        fake: Vec::new(),
        skipped: Vec::new(),
    };
    for ((_, generator), outcome) in items.iter().zip(outcomes) {
        match (outcome?, generator) {
            (Outcome::Skipped(s), _) => scored.skipped.push(s),
            (Outcome::Scored(r), None) => scored.real.push(r),
            (Outcome::Scored(r), Some(g)) => scored.fake.push(FakeScore {
                generator: g.to_string(),
                record: r,
            }),
        }
    }
    let total = items.len();
    let skipped = scored.skipped.len();
    if skipped as f64 > MAX_SKIP_FRACTION * total as f64 {
        let listing: Vec<String> = scored
            .skipped
            .iter()
            .take(5)
            .map(|s| s.path.clone())
            .collect();
        let origin = manifest
            .source()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from(&manifest.name));
        return Err(WarpadError::Ingestion {
            path: origin,
            reason: format!(
                "{skipped} of {total} images unreadable (limit {:.0}%), e.g. {}",
                MAX_SKIP_FRACTION * 100.0,
                listing.join(", ")
            ),
        });
    }
    if skipped > 0 {
        warn!("{skipped} of {total} images skipped");
    }
    Ok(scored)
}

/// AUROC per generator against the shared real scores, plus histograms.
pub fn build_report(
    manifest: &DatasetManifest,
    scored: &ScoredDataset,
    cfg: &DetectorConfig,
    opts: &EvalOptions,
) -> Result<EvalReport> {
    let mut all: Vec<ScoreRecord> = scored.real.clone();
    all.extend(scored.fake.iter().map(|f| f.record.clone()));
    let digest = common_digest(&all)?.to_string();
    if digest != opts.method.digest(cfg) {
        return Err(WarpadError::validation(
            "score records were produced by a different configuration",
        ));
    }
    let real = scored.real_scores();
    let mut per_generator = BTreeMap::new();
    for g in manifest.generators() {
        let fake: Vec<f64> = scored
            .fake
            .iter()
            .filter(|f| f.generator == g)
            .map(|f| f.record.score)
            .collect();
        if fake.is_empty() {
            return Err(WarpadError::validation(format!(
                "no readable images left for generator {g:?}"
            )));
        }
        per_generator.insert(g, auroc(&real, &fake)?);
    }
    let mean_auroc = per_generator.values().sum::<f64>() / per_generator.len() as f64;
    Ok(EvalReport {
        dataset: manifest.name.clone(),
        config_digest: digest,
        per_generator,
        mean_auroc,
        score_histograms: score_histogram(&real, &scored.fake_scores(), opts.histogram_bins)?,
        corruption: opts.corruption.map(|c| match c.kind {
            CorruptionKind::GaussianNoise => c.with_seed(c.seed.unwrap_or(opts.seed)),
            _ => c,
        }),
        method: opts.method,
        seed: opts.seed,
        n_real: scored.real.len(),
        n_fake: scored.fake.len(),
        skipped: scored.skipped.len(),
        skipped_images: scored.skipped.clone(),
        config: cfg.clone(),
    })
}

/// Scores a manifest and assembles its report.
pub fn run_eval<T: Scalar, E: Embedder<T> + ?Sized>(
    manifest: &DatasetManifest,
    cfg: &DetectorConfig,
    emb: &E,
    opts: &EvalOptions,
) -> Result<(EvalReport, ScoredDataset)> {
    let scored = score_manifest(manifest, cfg, emb, opts)?;
    let report = build_report(manifest, &scored, cfg, opts)?;
    Ok((report, scored))
}

/// Writes `report.json`, `scores_real.jsonl`, `scores_fake.jsonl` and
/// `histogram.csv` into `dir`; returns the report path.
pub fn write_eval_outputs(
    dir: &Path,
    report: &EvalReport,
    scored: &ScoredDataset,
) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let report_path = dir.join("report.json");
    fs::write(&report_path, report.to_json())?;
    write_jsonl(
        fs::File::create(dir.join("scores_real.jsonl"))?,
        &scored.real,
    )?;
    let fake: Vec<ScoreRecord> = scored.fake.iter().map(|f| f.record.clone()).collect();
    write_jsonl(fs::File::create(dir.join("scores_fake.jsonl"))?, &fake)?;
    fs::write(dir.join("histogram.csv"), report.score_histograms.to_csv())?;
    Ok(report_path)
}
