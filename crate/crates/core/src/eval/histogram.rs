use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WarpadError};
use crate::scoring::ScoreRecord;

/// Equal-width bins over the pooled score range, counted per class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreHistogram {
    /// `bins + 1` edges; a single bin when every score is equal.
    pub edges: Vec<f64>,
    pub real: Vec<usize>,
    pub fake: Vec<usize>,
}

impl ScoreHistogram {
    pub fn bins(&self) -> usize {
        self.real.len()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("lower,upper,real,fake\n");
        for i in 0..self.bins() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.edges[i],
                self.edges[i + 1],
                self.real[i],
                self.fake[i]
            ));
        }
        out
    }

    pub fn mean_of(&self, real: bool) -> Option<f64> {
        let counts = if real { &self.real } else { &self.fake };
        let n: usize = counts.iter().sum();
        if n == 0 {
            return None;
        }
        let s: f64 = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| c as f64 * 0.5 * (self.edges[i] + self.edges[i + 1]))
            .sum();
        Some(s / n as f64)
    }
}

pub fn score_histogram(real: &[f64], fake: &[f64], bins: usize) -> Result<ScoreHistogram> {
    if bins < 2 {
        return Err(WarpadError::validation(format!(
            "need at least 2 bins, got {bins}"
        )));
    }
    if real.is_empty() && fake.is_empty() {
        return Err(WarpadError::validation("no scores to histogram"));
    }
    let pooled = real.iter().chain(fake);
    let lo = pooled.clone().copied().fold(f64::INFINITY, f64::min);
    let hi = pooled.copied().fold(f64::NEG_INFINITY, f64::max);
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(WarpadError::validation("histogram scores must be finite"));
    }
    if lo == hi {
        warn!(
            "all {} scores equal {lo}; histogram collapses to one bin",
            real.len() + fake.len()
        );
        return Ok(ScoreHistogram {
            edges: vec![lo, hi],
            real: vec![real.len()],
            fake: vec![fake.len()],
        });
    }
    let width = (hi - lo) / bins as f64;
    let mut edges: Vec<f64> = (0..bins).map(|i| lo + width * i as f64).collect();
    edges.push(hi);
    let index = |v: f64| (((v - lo) / width) as usize).min(bins - 1);
    let mut h = ScoreHistogram {
        edges,
        real: vec![0; bins],
        fake: vec![0; bins],
    };
    for &v in real {
        h.real[index(v)] += 1;
    }
    for &v in fake {
        h.fake[index(v)] += 1;
    }
    Ok(h)
}

/// Histogram of the image scores of two record sets.
pub fn export_histogram(
    real: &[ScoreRecord],
    fake: &[ScoreRecord],
    bins: usize,
) -> Result<ScoreHistogram> {
    let r: Vec<f64> = real.iter().map(|x| x.score).collect();
    let f: Vec<f64> = fake.iter().map(|x| x.score).collect();
    score_histogram(&r, &f, bins)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_bins() {
        let h = score_histogram(&[1.0], &[0.0], 2).unwrap();
        assert_eq!(h.edges, vec![0.0, 0.5, 1.0]);
        assert_eq!((h.real.clone(), h.fake.clone()), (vec![0, 1], vec![1, 0]));
        assert_eq!(h.to_csv(), "lower,upper,real,fake\n0,0.5,0,1\n0.5,1,1,0\n");
    }

    #[test]
    fn degenerate_and_errors() {
        let h = score_histogram(&[0.3, 0.3], &[0.3], 10).unwrap();
        assert_eq!((h.bins(), h.real[0], h.fake[0]), (1, 2, 1));
        assert!(score_histogram(&[], &[], 4).is_err());
        assert!(score_histogram(&[0.1], &[0.2], 1).is_err());
    }
}
