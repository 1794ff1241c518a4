use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ScoreRecord;
use crate::error::{Result, WarpadError};

/// Per-patch scores laid out on the patch grid, with the extreme patches.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchScoreMap {
    pub rows: usize,
    pub cols: usize,
    /// Row-major, `rows * cols` values.
    pub values: Vec<f64>,
    pub argmax: (usize, usize),
    pub argmin: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremesSidecar {
    pub argmax: [usize; 2],
    pub argmin: [usize; 2],
}

/// Reshapes a record's square patch grid; ties resolve to the first index.
pub fn patch_score_map(record: &ScoreRecord) -> Result<PatchScoreMap> {
    let n = record.patch_scores.len();
    let side = n.isqrt();
    if n == 0 || side * side != n {
        return Err(WarpadError::validation(format!(
            "{} patch scores do not form a square grid",
            n
        )));
    }
    let (mut imax, mut imin) = (0, 0);
    for (i, &s) in record.patch_scores.iter().enumerate() {
        if s > record.patch_scores[imax] {
            imax = i;
        }
        if s < record.patch_scores[imin] {
            imin = i;
        }
    }
    Ok(PatchScoreMap {
        rows: side,
        cols: side,
        values: record.patch_scores.clone(),
        argmax: (imax / side, imax % side),
        argmin: (imin / side, imin % side),
    })
}

impl PatchScoreMap {
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.values[r * self.cols + c]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn sidecar(&self) -> ExtremesSidecar {
        ExtremesSidecar {
            argmax: [self.argmax.0, self.argmax.1],
            argmin: [self.argmin.0, self.argmin.1],
        }
    }

    /// Writes `{stem}.csv` and `{stem}.json` into `dir`; returns the CSV path.
    pub fn write(&self, dir: &Path, stem: &str) -> Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let csv = dir.join(format!("{stem}.csv"));
        fs::write(&csv, self.to_csv())?;
        fs::write(
            dir.join(format!("{stem}.json")),
            serde_json::to_string_pretty(&self.sidecar())?,
        )?;
        Ok(csv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scoring::Aggregation;

    fn rec(scores: Vec<f64>) -> ScoreRecord {
        ScoreRecord::from_patch_scores("x", scores, Aggregation::Mean, "d").unwrap()
    }

    #[test]
    fn ties_pick_first() {
        let m = patch_score_map(&rec(vec![0.7; 4])).unwrap();
        assert_eq!((m.argmax, m.argmin), ((0, 0), (0, 0)));
    }

    #[test]
    fn two_by_two() {
        let m = patch_score_map(&rec(vec![0.9, 0.1, 0.5, 0.5])).unwrap();
        assert_eq!((m.rows, m.cols), (2, 2));
        assert_eq!(m.argmax, (0, 0));
        assert_eq!(m.argmin, (0, 1));
        assert_eq!(m.to_csv(), "0.9,0.1\n0.5,0.5\n");
        let json = serde_json::to_string(&m.sidecar()).unwrap();
        assert_eq!(json, r#"{"argmax":[0,0],"argmin":[0,1]}"#);
    }

    #[test]
    fn six_by_six_index_arithmetic() {
        let scores: Vec<f64> = (0..36).map(|i| i as f64 / 36.0).collect();
        let m = patch_score_map(&rec(scores.clone())).unwrap();
        assert_eq!((m.rows, m.cols), (6, 6));
        for r in 0..6 {
            for c in 0..6 {
                assert_eq!(m.get(r, c), scores[r * 6 + c]);
            }
        }
        assert_eq!((m.argmin, m.argmax), ((0, 0), (5, 5)));
    }

    #[test]
    fn non_square_rejected() {
        assert!(patch_score_map(&rec(vec![0.1, 0.2, 0.3])).is_err());
    }

    #[test]
    fn writes_files() {
        let dir = tempfile::tempdir().unwrap();
        let m = patch_score_map(&rec(vec![0.9, 0.1, 0.5, 0.5])).unwrap();
        let csv = m.write(dir.path(), "img").unwrap();
        assert_eq!(fs::read_to_string(csv).unwrap(), "0.9,0.1\n0.5,0.5\n");
        assert!(dir.path().join("img.json").exists());
    }
}
