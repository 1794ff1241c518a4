use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WarpadError};

/// How per-patch scores are folded into one image score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    #[default]
    Mean,
    Median,
    Min,
    Max,
}

impl Aggregation {
    pub const ALL: [Aggregation; 4] = [
        Aggregation::Mean,
        Aggregation::Median,
        Aggregation::Min,
        Aggregation::Max,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Aggregation::Mean => "mean",
            Aggregation::Median => "median",
            Aggregation::Min => "min",
            Aggregation::Max => "max",
        }
    }

    /// Folds `scores`. The result does not depend on their order: values are
    /// sorted first, so even the mean is bit-identical under permutation.
    pub fn apply(self, scores: &[f64]) -> Result<f64> {
        if scores.is_empty() {
            return Err(WarpadError::validation(
                "cannot aggregate zero patch scores",
            ));
        }
        if scores.iter().any(|s| !s.is_finite()) {
            return Err(WarpadError::validation("patch scores must be finite"));
        }
        let mut sorted = scores.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        Ok(match self {
            Aggregation::Mean => sorted.iter().sum::<f64>() / n as f64,
            Aggregation::Median if n % 2 == 1 => sorted[n / 2],
            Aggregation::Median => 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]),
            Aggregation::Min => sorted[0],
            Aggregation::Max => sorted[n - 1],
        })
    }
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Aggregation {
    type Err = WarpadError;

    fn from_str(s: &str) -> Result<Self> {
        Aggregation::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                WarpadError::config(format!(
                    "unknown aggregation {s:?} (expected mean, median, min or max)"
                ))
            })
    }
}
