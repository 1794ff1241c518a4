use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;
use warpad::embedder::{build_embedder, EmbedderConfig};
use warpad::eval::{
    run_eval, split_values, write_eval_outputs, DatasetManifest, EvalOptions, SweepAxis,
};
use warpad::imageops::{load_image, CorruptionSpec};
use warpad::scoring::{patch_score_map, warpad_score, ScoreMethod, ScoreRecord, SigmaUnits};
use warpad::wavelet::{dump_pyramid, dwt2_multilevel};
use warpad::{Result, WarpadError};

use crate::config::{EffectiveConfig, RunConfigFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Warpad,
    Rigid,
    RigidPatch,
}

#[derive(Debug, Clone)]
pub struct MethodOptions {
    pub corrupt: Option<String>,
    pub method: MethodChoice,
    pub sigma: Option<f64>,
    pub sigma_units: SigmaUnits,
    pub bins: usize,
}

impl MethodOptions {
    fn eval_options(&self, seed: u64, jobs: usize) -> Result<EvalOptions> {
        let corruption = self
            .corrupt
            .as_deref()
            .map(str::parse::<CorruptionSpec>)
            .transpose()?;
        let sigma = || {
            self.sigma
                .map(|s| self.sigma_units.to_unit(s))
                .ok_or_else(|| {
                    WarpadError::Config("--sigma is required for the rigid methods".into())
                })
        };
        let method = match self.method {
            MethodChoice::Warpad => {
                if self.sigma.is_some() {
                    warn!("--sigma is ignored by the warpad method");
                }
                ScoreMethod::Warpad
            }
            MethodChoice::Rigid => ScoreMethod::Rigid { sigma: sigma()? },
            MethodChoice::RigidPatch => ScoreMethod::RigidPatch { sigma: sigma()? },
        };
        Ok(EvalOptions {
            corruption,
            method,
            seed,
            jobs,
            histogram_bins: self.bins,
        })
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| WarpadError::Config(format!("cannot start worker pool: {e}")))
}

/// File-name-safe form of a sweep value.
fn slug(value: &str) -> String {
    value
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '_') {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn stem_of(path: &Path) -> String {
    path.file_stem()
        .map(|s| slug(&s.to_string_lossy()))
        .unwrap_or_else(|| "image".into())
}

/// Scores each image; ingestion failures are reported and the run exits 2.
pub fn score(
    images: &[PathBuf],
    emit_patch_map: bool,
    file: &RunConfigFile,
    jobs: usize,
) -> Result<u8> {
    let cfg = file.detector_config()?;
    let emb = build_embedder::<f32>(&cfg.embedder)?;
    info!(
        "scoring {} images with config {}",
        images.len(),
        cfg.digest()
    );
    let outcomes: Vec<Result<ScoreRecord>> = pool(jobs)?.install(|| {
        images
            .par_iter()
            .map(|p| {
                let x = load_image::<f32>(p)?;
                warpad_score(&x, &p.display().to_string(), &cfg, emb.as_ref())
            })
            .collect()
    });

    let maps = file.output_dir.join("patch_maps");
    if emit_patch_map {
        EffectiveConfig::new(&cfg, file).write(&file.output_dir)?;
    }
    let mut out = io::stdout().lock();
    let mut ingestion_failed = false;
    for (i, (path, outcome)) in images.iter().zip(outcomes).enumerate() {
        match outcome {
            Ok(record) => {
                writeln!(out, "{}", record.to_json_line())?;
                if emit_patch_map {
                    patch_score_map(&record)?.write(&maps, &format!("{i}_{}", stem_of(path)))?;
                }
            }
            Err(e @ WarpadError::Ingestion { .. }) => {
                eprintln!("error: {e}");
                ingestion_failed = true;
            }
            Err(e) => return Err(e),
        }
    }
    out.flush()?;
    Ok(if ingestion_failed { 2 } else { 0 })
}

pub fn eval(
    manifest: &Path,
    method: &MethodOptions,
    file: &RunConfigFile,
    jobs: usize,
) -> Result<u8> {
    let cfg = file.detector_config()?;
    let opts = method.eval_options(file.seed, jobs)?;
    let manifest = DatasetManifest::load(manifest)?;
    let emb = build_embedder::<f32>(&cfg.embedder)?;
    let (report, scored) = run_eval(&manifest, &cfg, emb.as_ref(), &opts)?;
    let path = write_eval_outputs(&file.output_dir, &report, &scored)?;
    EffectiveConfig::new(&cfg, file).write(&file.output_dir)?;
    print!("{}", report.table());
    io::stdout().flush()?;
    eprintln!("report: {}", path.display());
    Ok(0)
}

/// Writes `sweep_<axis>.csv` and one report per value under `sweep_<axis>/`.
pub fn sweep(
    manifest: &Path,
    axis: &str,
    values: &str,
    method: &MethodOptions,
    file: &RunConfigFile,
    jobs: usize,
) -> Result<u8> {
    let axis: SweepAxis = axis.parse()?;
    let values = split_values(values);
    let cfg = file.detector_config()?;
    let opts = method.eval_options(file.seed, jobs)?;
    let manifest = DatasetManifest::load(manifest)?;
    let make = |c: &EmbedderConfig| build_embedder::<f32>(c);
    let result = warpad::eval::sweep(&manifest, &cfg, &opts, axis, &values, &make)?;
    info!(
        "{} values, {} scoring passes",
        result.points.len(),
        result.scoring_passes
    );

    let reports = file.output_dir.join(format!("sweep_{axis}"));
    for (i, (value, report)) in result.reports().enumerate() {
        let dir = reports.join(format!("{i:02}_{}", slug(value)));
        fs::create_dir_all(&dir)?;
        fs::write(dir.join("report.json"), report.to_json())?;
    }
    EffectiveConfig::new(&cfg, file).write(&file.output_dir)?;
    let csv = result.to_csv()?;
    let csv_path = file.output_dir.join(format!("sweep_{axis}.csv"));
    fs::write(&csv_path, &csv)?;
    print!("{csv}");
    io::stdout().flush()?;
    eprintln!("sweep: {}", csv_path.display());

    let mut code = 0;
    for (value, e) in result.failures() {
        eprintln!("error: {axis}={value}: {e}");
        if code == 0 {
            code = crate::exit_code(e);
        }
    }
    Ok(code)
}

/// Writes the pyramid planes and `manifest.json`; prints the manifest path.
pub fn dwt_dump(image: &Path, file: &RunConfigFile) -> Result<u8> {
    let x = load_image::<f32>(image)?;
    let spec = file.detector.wavelet;
    let pyramid = dwt2_multilevel(&x, &spec)?;
    let m = dump_pyramid(&pyramid, &file.output_dir)?;
    info!("{} planes for {spec}", m.planes.len());
    println!("{}", file.output_dir.join("manifest.json").display());
    Ok(0)
}
