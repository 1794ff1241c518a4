use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use log::{info, warn};

use super::{build_report, score_manifest, DatasetManifest, EvalOptions, EvalReport};
use crate::embedder::{Embedder, EmbedderConfig};
use crate::error::{Result, WarpadError};
use crate::imageops::CorruptionSpec;
use crate::scalar::Scalar;
use crate::scoring::DetectorConfig;
use crate::wavelet::{Boundary, WaveletFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    Alpha,
    DRescale,
    DPatch,
    Wavelet,
    Level,
    Aggregation,
    Corruption,
}

impl SweepAxis {
    pub const ALL: [SweepAxis; 7] = [
        SweepAxis::Alpha,
        SweepAxis::DRescale,
        SweepAxis::DPatch,
        SweepAxis::Wavelet,
        SweepAxis::Level,
        SweepAxis::Aggregation,
        SweepAxis::Corruption,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Alpha => "alpha",
            SweepAxis::DRescale => "d_rescale",
            SweepAxis::DPatch => "d_patch",
            SweepAxis::Wavelet => "wavelet",
            SweepAxis::Level => "level",
            SweepAxis::Aggregation => "aggregation",
            SweepAxis::Corruption => "corruption",
        }
    }

    pub fn names() -> String {
        Self::ALL.map(|a| a.name()).join(", ")
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = WarpadError;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().replace('-', "_");
        SweepAxis::ALL
            .into_iter()
            .find(|a| a.name() == norm)
            .ok_or_else(|| {
                WarpadError::config(format!(
                    "unknown sweep axis {s:?}; expected one of: {}",
                    SweepAxis::names()
                ))
            })
    }
}

/// Splits a comma list; `seed=` options stay attached to their corruption.
pub fn split_values(list: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match out.last_mut() {
            Some(prev) if tok.starts_with("seed=") => {
                prev.push(',');
                prev.push_str(tok);
            }
            _ => out.push(tok.to_string()),
        }
    }
    out
}

fn parse<V: FromStr>(axis: SweepAxis, value: &str) -> Result<V> {
    value
        .trim()
        .parse()
        .map_err(|_| WarpadError::config(format!("invalid {axis} value {value:?}")))
}

/// `FAMILY[:LEVEL[:BOUNDARY]]`.
fn apply_wavelet(cfg: &mut DetectorConfig, value: &str) -> Result<()> {
    let mut parts = value.split(':');
    cfg.wavelet.family = parts.next().unwrap_or_default().parse::<WaveletFamily>()?;
    if let Some(l) = parts.next() {
        cfg.wavelet.levels = parse(SweepAxis::Wavelet, l)?;
    }
    if let Some(b) = parts.next() {
        cfg.wavelet.boundary = b.parse::<Boundary>()?;
    }
    if parts.next().is_some() {
        return Err(WarpadError::config(format!(
            "wavelet value {value:?} has too many fields (FAMILY[:LEVEL[:BOUNDARY]])"
        )));
    }
    Ok(())
}

/// Config and options for one sweep point; everything else stays fixed.
///
/// A `d_patch` change resizes the embedder input and keeps the patch count,
/// scaling `d_rescale` by the same factor.
pub fn apply_axis(
    base: &DetectorConfig,
    base_opts: &EvalOptions,
    axis: SweepAxis,
    value: &str,
) -> Result<(DetectorConfig, EvalOptions)> {
    let mut cfg = base.clone();
    let mut opts = base_opts.clone();
    match axis {
        SweepAxis::Alpha => cfg.alpha = parse(axis, value)?,
        SweepAxis::DRescale => cfg.d_rescale = parse(axis, value)?,
        SweepAxis::DPatch => {
            let d: usize = parse(axis, value)?;
            let per_side = base.d_rescale / base.d_patch.max(1);
            cfg.d_patch = d;
            cfg.embedder.input_size = d;
            cfg.d_rescale = d * per_side;
        }
        SweepAxis::Wavelet => apply_wavelet(&mut cfg, value)?,
        SweepAxis::Level => cfg.wavelet.levels = parse(axis, value)?,
        SweepAxis::Aggregation => cfg.aggregation = value.parse()?,
        SweepAxis::Corruption => {
            opts.corruption = if value.trim().eq_ignore_ascii_case("none") {
                None
            } else {
                Some(value.parse::<CorruptionSpec>()?)
            }
        }
    }
    cfg.validate()?;
    if let Some(c) = &opts.corruption {
        c.validate()?;
    }
    Ok((cfg, opts))
}

pub struct SweepPoint {
    pub value: String,
    pub outcome: Result<EvalReport>,
}

pub struct SweepResult {
    pub axis: SweepAxis,
    pub points: Vec<SweepPoint>,
    /// Number of full embedding passes over the manifest.
    pub scoring_passes: usize,
}

impl SweepResult {
    pub fn reports(&self) -> impl Iterator<Item = (&str, &EvalReport)> {
        self.points
            .iter()
            .filter_map(|p| p.outcome.as_ref().ok().map(|r| (p.value.as_str(), r)))
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, &WarpadError)> {
        self.points
            .iter()
            .filter_map(|p| p.outcome.as_ref().err().map(|e| (p.value.as_str(), e)))
    }

    /// `axis,generator,auroc` rows, one per generator plus a `mean` row.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| WarpadError::validation(format!("csv: {e}"));
        w.write_record(["axis", "generator", "auroc"]).map_err(io)?;
        for (value, report) in self.reports() {
            for (g, a) in &report.per_generator {
                w.write_record([value, g.as_str(), &a.to_string()])
                    .map_err(io)?;
            }
            w.write_record([value, "mean", &report.mean_auroc.to_string()])
                .map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| WarpadError::validation(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}

/// Constructs a backend for a (possibly swept) embedder config.
pub type EmbedderFactory<T> = dyn Fn(&EmbedderConfig) -> Result<Arc<dyn Embedder<T>>>;

/// Builds (or reuses) the embedder for each distinct backend config.
struct EmbedderCache<'a, T: Scalar> {
    make: &'a EmbedderFactory<T>,
    built: Vec<(EmbedderConfig, Arc<dyn Embedder<T>>)>,
}

impl<T: Scalar> EmbedderCache<'_, T> {
    fn get(&mut self, cfg: &EmbedderConfig) -> Result<Arc<dyn Embedder<T>>> {
        if let Some((_, e)) = self.built.iter().find(|(c, _)| c == cfg) {
            return Ok(e.clone());
        }
        let e = (self.make)(cfg)?;
        self.built.push((cfg.clone(), e.clone()));
        Ok(e)
    }
}

/// One report per value of `axis`. Bad values are recorded and skipped.
pub fn sweep<T: Scalar>(
    manifest: &DatasetManifest,
    base: &DetectorConfig,
    base_opts: &EvalOptions,
    axis: SweepAxis,
    values: &[String],
    make_embedder: &EmbedderFactory<T>,
) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(WarpadError::config(format!(
            "no values given for sweep axis {axis}"
        )));
    }
    let mut cache = EmbedderCache {
        make: make_embedder,
        built: Vec::new(),
    };
    let mut result = SweepResult {
        axis,
        points: Vec::new(),
        scoring_passes: 0,
    };
    let planned: Vec<(String, Result<(DetectorConfig, EvalOptions)>)> = values
        .iter()
        .map(|v| (v.clone(), apply_axis(base, base_opts, axis, v)))
        .collect();

    if axis == SweepAxis::Aggregation {
        // aggregation is a fold over stored patch scores: embed once
        let mut shared = None;
        if planned.iter().any(|(_, p)| p.is_ok()) {
            base.validate()?;
            let emb = cache.get(&base.embedder)?;
            info!(
                "aggregation sweep: one scoring pass for {} rules",
                values.len()
            );
            shared = Some(score_manifest(manifest, base, emb.as_ref(), base_opts)?);
            result.scoring_passes += 1;
        }
        for (value, plan) in planned {
            let outcome = plan.and_then(|(cfg, opts)| {
                let scored = shared
                    .as_ref()
                    .expect("scored when any value is valid")
                    .reaggregate(cfg.aggregation, &opts.method.digest(&cfg))?;
                build_report(manifest, &scored, &cfg, &opts)
            });
            result.points.push(SweepPoint { value, outcome });
        }
    } else {
        for (value, plan) in planned {
            let outcome = plan.and_then(|(cfg, opts)| {
                let emb = cache.get(&cfg.embedder)?;
                result.scoring_passes += 1;
                let scored = score_manifest(manifest, &cfg, emb.as_ref(), &opts)?;
                build_report(manifest, &scored, &cfg, &opts)
            });
            result.points.push(SweepPoint { value, outcome });
        }
    }
    for (v, e) in result.failures() {
        warn!("sweep {axis}={v}: {e}");
    }
    Ok(result)
}
