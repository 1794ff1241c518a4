use crate::error::{Result, WarpadError};

/// Area under the ROC curve with real images as the positive class:
/// `P(real > fake)`, ties counted one half (Mann-Whitney with midranks).
pub fn auroc(real: &[f64], fake: &[f64]) -> Result<f64> {
    if real.is_empty() || fake.is_empty() {
        return Err(WarpadError::validation(format!(
            "auroc needs scores for both classes (got {} real, {} fake)",
            real.len(),
            fake.len()
        )));
    }
    if real.iter().chain(fake).any(|s| !s.is_finite()) {
        return Err(WarpadError::validation("auroc scores must be finite"));
    }
    let mut all: Vec<(f64, bool)> = real
        .iter()
        .map(|&s| (s, true))
        .chain(fake.iter().map(|&s| (s, false)))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    // -0.0 and 0.0 must tie
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < all.len() {
        let mut j = i;
        while j + 1 < all.len() && all[j + 1].0 == all[i].0 {
            j += 1;
        }
        let midrank = (i + j) as f64 / 2.0 + 1.0;
        rank_sum += midrank * all[i..=j].iter().filter(|e| e.1).count() as f64;
        i = j + 1;
    }
    let n = real.len() as f64;
    let m = fake.len() as f64;
    Ok((rank_sum - n * (n + 1.0) / 2.0) / (n * m))
}
