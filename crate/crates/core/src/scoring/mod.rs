//! Detection scores: per-patch HF sensitivity, its image-level aggregate,
//! and the additive-noise baseline.

mod aggregate;
mod config;
mod map;
mod record;
mod score;

pub use aggregate::Aggregation;
pub use config::DetectorConfig;
pub use map::{patch_score_map, ExtremesSidecar, PatchScoreMap};
pub use record::{
    classify, common_digest, read_jsonl, write_jsonl, DecisionRule, ScoreRecord, Verdict,
};
pub use score::{
    gaussian_field, hfwav_patch_scores, hfwav_score, perturb, rigid_patch_score, rigid_score,
    warpad_score, ScoreMethod, SigmaUnits,
};
