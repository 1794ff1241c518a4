use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::Aggregation;
use crate::error::{Result, WarpadError};

/// Score of one image with its per-patch breakdown (row-major).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub image_id: String,
    pub score: f64,
    pub patch_scores: Vec<f64>,
    pub config_digest: String,
}

impl ScoreRecord {
    pub fn from_patch_scores(
        image_id: impl Into<String>,
        patch_scores: Vec<f64>,
        aggregation: Aggregation,
        config_digest: impl Into<String>,
    ) -> Result<Self> {
        if let Some(s) = patch_scores.iter().find(|s| !(-1.0..=1.0).contains(*s)) {
            return Err(WarpadError::validation(format!(
                "patch score {s} outside [-1, 1]"
            )));
        }
        Ok(ScoreRecord {
            image_id: image_id.into(),
            score: aggregation.apply(&patch_scores)?,
            patch_scores,
            config_digest: config_digest.into(),
        })
    }

    /// Same patch scores folded with another rule, tagged with that config's digest.
    pub fn reaggregate(
        &self,
        aggregation: Aggregation,
        config_digest: impl Into<String>,
    ) -> Result<Self> {
        Self::from_patch_scores(
            self.image_id.clone(),
            self.patch_scores.clone(),
            aggregation,
            config_digest,
        )
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// One JSON object per line.
pub fn write_jsonl<W: Write>(mut out: W, records: &[ScoreRecord]) -> Result<()> {
    for r in records {
        writeln!(out, "{}", r.to_json_line())?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<ScoreRecord>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| {
            WarpadError::validation(format!("score record on line {}: {e}", i + 1))
        })?);
    }
    Ok(out)
}

/// Returns the shared digest, refusing to mix records from different configs.
pub fn common_digest(records: &[ScoreRecord]) -> Result<&str> {
    let first = records
        .first()
        .ok_or_else(|| WarpadError::validation("no score records"))?;
    if let Some(r) = records
        .iter()
        .find(|r| r.config_digest != first.config_digest)
    {
        return Err(WarpadError::validation(format!(
            "records {} and {} were produced by different configs",
            first.image_id, r.image_id
        )));
    }
    Ok(&first.config_digest)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionRule {
    pub tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Real,
    Generated,
}

impl DecisionRule {
    pub fn new(tau: f64) -> Result<Self> {
        if !tau.is_finite() {
            return Err(WarpadError::config(format!(
                "threshold must be finite, got {tau}"
            )));
        }
        Ok(DecisionRule { tau })
    }

    /// Real iff `score >= tau`.
    pub fn classify_score(&self, score: f64) -> Verdict {
        if score >= self.tau {
            Verdict::Real
        } else {
            Verdict::Generated
        }
    }
}

pub fn classify(record: &ScoreRecord, rule: &DecisionRule) -> Verdict {
    rule.classify_score(record.score)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, scores: &[f64]) -> ScoreRecord {
        ScoreRecord::from_patch_scores(id, scores.to_vec(), Aggregation::Mean, "d").unwrap()
    }

    #[test]
    fn thresholds() {
        let rule = DecisionRule::new(0.9).unwrap();
        assert_eq!(classify(&rec("a", &[0.99]), &rule), Verdict::Real);
        assert_eq!(classify(&rec("b", &[0.5]), &rule), Verdict::Generated);
        assert_eq!(classify(&rec("c", &[0.9]), &rule), Verdict::Real);
        assert!(DecisionRule::new(f64::NAN).is_err());
    }

    #[test]
    fn jsonl_round_trip() {
        let rs = vec![rec("a.png", &[0.5, 0.25]), rec("b.png", &[1.0])];
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &rs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with(
            r#"{"image_id":"a.png","score":0.375,"patch_scores":[0.5,0.25],"config_digest":"d"}"#
        ));
        assert_eq!(read_jsonl(&buf[..]).unwrap(), rs);
    }

    #[test]
    fn digests_must_agree() {
        let mut rs = vec![rec("a", &[0.5]), rec("b", &[0.5])];
        assert_eq!(common_digest(&rs).unwrap(), "d");
        rs[1].config_digest = "e".into();
        assert!(common_digest(&rs).is_err());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(ScoreRecord::from_patch_scores("x", vec![1.5], Aggregation::Mean, "d").is_err());
    }
}
