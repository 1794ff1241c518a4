//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use warpad::embedder::TestEmbedder;
use warpad::ImageTensor;

/// Scalar-loop projection through the test backend's weights.
pub fn project<T: warpad::Scalar>(e: &TestEmbedder, x: &ImageTensor<T>) -> Vec<f64> {
    let g = e.grid();
    let s = e.stride();
    (0..e.dims())
        .map(|out| {
            let mut acc = 0.0;
            for c in 0..3 {
                for i in 0..g {
                    for j in 0..g {
                        acc +=
                            e.weight(out, c * g * g + i * g + j) * x.get(c, i * s, j * s).as_f64();
                    }
                }
            }
            acc
        })
        .collect()
}

pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb)
}

/// Haar HF on sides divisible by `2^levels`: the residual after
/// replacing every `2^levels` block by its mean.
pub fn haar_hf(x: &ImageTensor<f64>, levels: u32) -> ImageTensor<f64> {
    let b = 1usize << levels;
    let (c, h, w) = x.dims();
    assert!(h % b == 0 && w % b == 0);
    ImageTensor::from_fn(c, h, w, |ch, y, xx| {
        let (y0, x0) = (y / b * b, xx / b * b);
        let mut m = 0.0;
        for dy in 0..b {
            for dx in 0..b {
                m += x.get(ch, y0 + dy, x0 + dx);
            }
        }
        x.get(ch, y, xx) - m / (b * b) as f64
    })
}

pub fn random_image(c: usize, h: usize, w: usize, seed: u64) -> ImageTensor<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImageTensor::from_fn(c, h, w, |_, _, _| rng.random::<f64>())
}

/// Smooth gradient plus seeded texture, in [0, 1].
pub fn textured_image(h: usize, w: usize, seed: u64) -> ImageTensor<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImageTensor::from_fn(3, h, w, |c, y, x| {
        let base = 0.3 + 0.2 * ((y as f64 / h as f64) + (x as f64 / w as f64) + 0.1 * c as f64);
        (base + 0.3 * rng.random::<f64>()).clamp(0.0, 1.0)
    })
}

/// P(real > fake) by explicit pair counting, ties worth one half.
pub fn brute_auroc(real: &[f64], fake: &[f64]) -> f64 {
    let mut wins = 0.0;
    for r in real {
        for f in fake {
            if r > f {
                wins += 1.0;
            } else if r == f {
                wins += 0.5;
            }
        }
    }
    wins / (real.len() * fake.len()) as f64
}

/// Writes `n_real` smooth PNGs and `n_fake` noisy PNGs per generator under
/// `dir` and returns the manifest JSON path. Paths in the manifest are relative.
pub fn synthetic_manifest(
    dir: &std::path::Path,
    n_real: usize,
    n_fake: usize,
    generators: &[&str],
) -> std::path::PathBuf {
    use warpad::imageops::save_png;
    std::fs::create_dir_all(dir.join("real")).unwrap();
    std::fs::create_dir_all(dir.join("fake")).unwrap();
    let mut real = Vec::new();
    for i in 0..n_real {
        let rel = format!("real/r{i:03}.png");
        let img = ImageTensor::<f64>::from_fn(3, 40 + i % 5, 48, |c, y, x| {
            0.2 + 0.6 * (0.05 * (y + 2 * x + 7 * c + i) as f64).sin().abs()
        });
        save_png(&img, &dir.join(&rel)).unwrap();
        real.push(serde_json::Value::String(rel));
    }
    let mut fake = Vec::new();
    for (g, name) in generators.iter().enumerate() {
        for i in 0..n_fake {
            let rel = format!("fake/{name}_{i:03}.png");
            let img = random_image(3, 44, 40 + i % 3, 1000 * g as u64 + i as u64);
            save_png(&img, &dir.join(&rel)).unwrap();
            fake.push(serde_json::json!({"path": rel, "generator": name}));
        }
    }
    let manifest = serde_json::json!({
        "name": "synthetic",
        "real": real,
        "fake": fake,
        "metadata": {"source": "generated by tests"}
    });
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(&manifest).unwrap()).unwrap();
    path
}
