//! Separable triangle-filter resampling.
//!
//! Upscaling reduces to bilinear interpolation on pixel centers with edge
//! clamping. Downscaling widens the triangle by the scale factor, which is
//! the usual antialiased bilinear. Taps falling outside the source are
//! dropped and the remaining weights renormalized.

use crate::error::{Result, WarpadError};
use crate::scalar::Scalar;
use crate::tensor::ImageTensor;

struct Taps<T> {
    start: usize,
    weights: Vec<T>,
}

fn taps<T: Scalar>(in_len: usize, out_len: usize) -> Vec<Taps<T>> {
    let scale = in_len as f64 / out_len as f64;
    let support = scale.max(1.0);
    (0..out_len)
        .map(|i| {
            let center = (i as f64 + 0.5) * scale - 0.5;
            let lo = ((center - support).ceil() as isize).max(0) as usize;
            let hi = ((center + support).floor() as isize).min(in_len as isize - 1) as usize;
            let mut w: Vec<f64> = (lo..=hi)
                .map(|j| (1.0 - (j as f64 - center).abs() / support).max(0.0))
                .collect();
            let total: f64 = w.iter().sum();
            if total > 0.0 {
                w.iter_mut().for_each(|v| *v /= total);
            } else {
                // center sits exactly between taps outside the support; nearest wins
                w = vec![0.0; hi - lo + 1];
                let nearest = (center.round().max(0.0) as usize).clamp(lo, hi);
                w[nearest - lo] = 1.0;
            }
            Taps {
                start: lo,
                weights: w.into_iter().map(T::of).collect(),
            }
        })
        .collect()
}

/// Resamples every channel to `height x width`.
pub fn resize<T: Scalar>(
    x: &ImageTensor<T>,
    height: usize,
    width: usize,
) -> Result<ImageTensor<T>> {
    if height == 0 || width == 0 {
        return Err(WarpadError::validation(format!(
            "target size must be positive, got {height}x{width}"
        )));
    }
    let (channels, in_h, in_w) = x.dims();
    if in_h == height && in_w == width {
        return Ok(x.clone());
    }

    let col_taps = taps::<T>(in_w, width);
    let row_taps = taps::<T>(in_h, height);
    let mut out = Vec::with_capacity(channels * height * width);
    let mut tmp = vec![T::zero(); in_h * width];
    for c in 0..channels {
        let plane = x.channel(c);
        for y in 0..in_h {
            let src = &plane[y * in_w..(y + 1) * in_w];
            for (ox, t) in col_taps.iter().enumerate() {
                tmp[y * width + ox] = t
                    .weights
                    .iter()
                    .zip(&src[t.start..])
                    .map(|(&w, &v)| w * v)
                    .sum();
            }
        }
        for t in &row_taps {
            for ox in 0..width {
                let mut acc = T::zero();
                for (k, &w) in t.weights.iter().enumerate() {
                    acc += w * tmp[(t.start + k) * width + ox];
                }
                out.push(acc);
            }
        }
    }
    ImageTensor::new(channels, height, width, out)
}

/// Forces the image to `d x d`; aspect ratio is not preserved.
pub fn rescale<T: Scalar>(x: &ImageTensor<T>, d: usize) -> Result<ImageTensor<T>> {
    if d == 0 {
        return Err(WarpadError::validation(
            "rescale dimension must be at least 1",
        ));
    }
    resize(x, d, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Straightforward per-pixel bilinear with clamped source coordinates.
    fn naive_bilinear(x: &ImageTensor<f64>, h: usize, w: usize) -> ImageTensor<f64> {
        let sample = |len_in: usize, len_out: usize, i: usize| {
            let s = ((i as f64 + 0.5) * len_in as f64 / len_out as f64 - 0.5)
                .clamp(0.0, (len_in - 1) as f64);
            let i0 = s.floor() as usize;
            let i1 = (i0 + 1).min(len_in - 1);
            (i0, i1, s - i0 as f64)
        };
        ImageTensor::from_fn(x.channels(), h, w, |c, oy, ox| {
            let (y0, y1, ty) = sample(x.height(), h, oy);
            let (x0, x1, tx) = sample(x.width(), w, ox);
            let top = x.get(c, y0, x0) * (1.0 - tx) + x.get(c, y0, x1) * tx;
            let bottom = x.get(c, y1, x0) * (1.0 - tx) + x.get(c, y1, x1) * tx;
            top * (1.0 - ty) + bottom * ty
        })
    }

    #[test]
    fn ramp_upscale_matches_naive_bilinear() {
        let x = ImageTensor::new(1, 2, 2, vec![0.0, 1.0, 0.0, 1.0]).unwrap();
        let got = rescale(&x, 4).unwrap();
        let want = naive_bilinear(&x, 4, 4);
        assert!(got.max_abs_diff(&want).unwrap() < 1e-12);
        // every row is the clamped ramp 0, 0.25, 0.75, 1
        for y in 0..4 {
            let row: Vec<f64> = (0..4).map(|c| got.get(0, y, c)).collect();
            assert_eq!(row, vec![0.0, 0.25, 0.75, 1.0]);
        }
    }

    #[test]
    fn arbitrary_upscale_matches_naive_bilinear() {
        let x = ImageTensor::<f64>::from_fn(3, 5, 7, |c, y, x| {
            ((c * 13 + y * 5 + x * 3) % 17) as f64 / 17.0
        });
        for (h, w) in [(9, 13), (10, 7), (5, 20)] {
            let got = resize(&x, h, w).unwrap();
            let want = naive_bilinear(&x, h, w);
            assert!(got.max_abs_diff(&want).unwrap() < 1e-12, "{h}x{w}");
        }
    }

    #[test]
    fn constant_survives_any_resize() {
        let x = ImageTensor::<f32>::filled(3, 37, 53, 0.42);
        for d in [1, 5, 37, 64, 224] {
            let y = rescale(&x, d).unwrap();
            assert_eq!(y.dims(), (3, d, d));
            assert!(y.data().iter().all(|v| (v - 0.42).abs() <= 1e-6));
        }
    }

    #[test]
    fn identity_and_idempotence() {
        let x = ImageTensor::<f32>::from_fn(3, 16, 16, |c, y, x| (c + y * x) as f32 / 300.0);
        assert_eq!(rescale(&x, 16).unwrap(), x);
        let once = rescale(&x, 11).unwrap();
        assert_eq!(rescale(&once, 11).unwrap(), once);
    }

    #[test]
    fn downscale_averages() {
        // 2:1 downscale of a checkerboard lands on its mean
        let x = ImageTensor::<f64>::from_fn(1, 8, 8, |_, y, x| ((y + x) % 2) as f64);
        let y = rescale(&x, 4).unwrap();
        for v in y.data() {
            assert!((v - 0.5).abs() < 0.2, "{v}");
        }
        assert!(rescale(&x, 0).is_err());
    }
}
