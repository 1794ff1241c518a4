//! Dataset evaluation: manifests, AUROC, reports, histograms and sweeps.

mod auroc;
mod histogram;
mod manifest;
mod run;
mod sweep;

pub use auroc::auroc;
pub use histogram::{export_histogram, score_histogram, ScoreHistogram};
pub use manifest::{DatasetManifest, FakeEntry};
pub use run::{
    build_report, corruption_for, image_seed, run_eval, score_manifest, write_eval_outputs,
    EvalOptions, EvalReport, FakeScore, ScoredDataset, SkippedImage, MAX_SKIP_FRACTION,
};
pub use sweep::{
    apply_axis, split_values, sweep, EmbedderFactory, SweepAxis, SweepPoint, SweepResult,
};
