//! Test-time corruptions: JPEG round-trip, center crop + resize, Gaussian noise.

use std::fmt;
use std::io::Cursor;
use std::str::FromStr;

use image::codecs::jpeg::JpegEncoder;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize, Serializer};

use super::io::{decode_image, to_rgb8};
use super::resize::resize;
use crate::error::{Result, WarpadError};
use crate::scalar::Scalar;
use crate::tensor::ImageTensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorruptionKind {
    Jpeg,
    CenterCrop,
    GaussianNoise,
}

impl CorruptionKind {
    pub fn name(self) -> &'static str {
        match self {
            CorruptionKind::Jpeg => "jpeg",
            CorruptionKind::CenterCrop => "center_crop",
            CorruptionKind::GaussianNoise => "gaussian_noise",
        }
    }
}

/// One corruption with its strength: JPEG quality in `[1, 100]`, crop ratio
/// in `(0, 1]`, or noise sigma `>= 0` in `[0, 1]` pixel units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorruptionSpec {
    pub kind: CorruptionKind,
    #[serde(serialize_with = "integral_as_int")]
    pub parameter: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn integral_as_int<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        s.serialize_i64(*v as i64)
    } else {
        s.serialize_f64(*v)
    }
}

impl CorruptionSpec {
    pub fn jpeg(quality: u8) -> Self {
        CorruptionSpec {
            kind: CorruptionKind::Jpeg,
            parameter: quality as f64,
            seed: None,
        }
    }

    pub fn center_crop(ratio: f64) -> Self {
        CorruptionSpec {
            kind: CorruptionKind::CenterCrop,
            parameter: ratio,
            seed: None,
        }
    }

    pub fn gaussian_noise(sigma: f64, seed: u64) -> Self {
        CorruptionSpec {
            kind: CorruptionKind::GaussianNoise,
            parameter: sigma,
            seed: Some(seed),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.parameter;
        let ok = match self.kind {
            CorruptionKind::Jpeg => (1.0..=100.0).contains(&p) && p.fract() == 0.0,
            CorruptionKind::CenterCrop => p > 0.0 && p <= 1.0,
            CorruptionKind::GaussianNoise => p >= 0.0 && p.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(WarpadError::validation(format!(
                "invalid {} parameter {p}",
                self.kind.name()
            )))
        }
    }

    /// Same corruption with a different noise seed (no-op for other kinds).
    pub fn with_seed(mut self, seed: u64) -> Self {
        if self.kind == CorruptionKind::GaussianNoise {
            self.seed = Some(seed);
        }
        self
    }
}

impl fmt::Display for CorruptionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.kind.name(), self.parameter)?;
        if let Some(seed) = self.seed {
            write!(f, ",seed={seed}")?;
        }
        Ok(())
    }
}

/// Parses `KIND=PARAM[,seed=S]`, e.g. `jpeg=90` or `gaussian_noise=0.05,seed=3`.
impl FromStr for CorruptionSpec {
    type Err = WarpadError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(',');
        let head = parts.next().unwrap_or_default();
        let (kind, param) = head
            .split_once('=')
            .ok_or_else(|| WarpadError::validation(format!("expected KIND=PARAM, got '{s}'")))?;
        let kind = match kind.trim() {
            "jpeg" => CorruptionKind::Jpeg,
            "center_crop" | "crop" => CorruptionKind::CenterCrop,
            "gaussian_noise" | "noise" => CorruptionKind::GaussianNoise,
            other => {
                return Err(WarpadError::validation(format!(
                    "unknown corruption '{other}' (expected jpeg, center_crop or gaussian_noise)"
                )))
            }
        };
        let parameter: f64 = param
            .trim()
            .parse()
            .map_err(|_| WarpadError::validation(format!("bad corruption parameter '{param}'")))?;
        let mut seed = None;
        for extra in parts {
            match extra.split_once('=') {
                Some(("seed", v)) => {
                    seed = Some(v.trim().parse().map_err(|_| {
                        WarpadError::validation(format!("bad corruption seed '{v}'"))
                    })?)
                }
                _ => {
                    return Err(WarpadError::validation(format!(
                        "unexpected corruption option '{extra}'"
                    )))
                }
            }
        }
        let spec = CorruptionSpec {
            kind,
            parameter,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Applies `spec`; the output always has the input's shape.
pub fn corrupt<T: Scalar>(x: &ImageTensor<T>, spec: &CorruptionSpec) -> Result<ImageTensor<T>> {
    spec.validate()?;
    match spec.kind {
        CorruptionKind::Jpeg => jpeg_round_trip(x, spec.parameter as u8),
        CorruptionKind::CenterCrop => center_crop(x, spec.parameter),
        CorruptionKind::GaussianNoise => gaussian_noise(x, spec.parameter, spec.seed.unwrap_or(0)),
    }
}

fn jpeg_round_trip<T: Scalar>(x: &ImageTensor<T>, quality: u8) -> Result<ImageTensor<T>> {
    let rgb = to_rgb8(x)?;
    let mut buf = Cursor::new(Vec::new());
    JpegEncoder::new_with_quality(&mut buf, quality)
        .encode_image(&rgb)
        .map_err(|e| WarpadError::validation(format!("jpeg encode failed: {e}")))?;
    decode_image(buf.get_ref())
}

fn center_crop<T: Scalar>(x: &ImageTensor<T>, ratio: f64) -> Result<ImageTensor<T>> {
    let (_, h, w) = x.dims();
    let ch = ((ratio * h as f64).round() as usize).clamp(1, h);
    let cw = ((ratio * w as f64).round() as usize).clamp(1, w);
    let cropped = x.crop((h - ch) / 2, (w - cw) / 2, ch, cw)?;
    resize(&cropped, h, w)
}

fn gaussian_noise<T: Scalar>(x: &ImageTensor<T>, sigma: f64, seed: u64) -> Result<ImageTensor<T>> {
    if sigma == 0.0 {
        return Ok(x.clone());
    }
    let normal = Normal::new(0.0, sigma).map_err(|e| WarpadError::validation(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = x.clone();
    for v in out.data_mut() {
        let noisy = v.as_f64() + normal.sample(&mut rng);
        *v = T::of(noisy.clamp(0.0, 1.0));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ImageTensor<f32> {
        ImageTensor::from_fn(3, 24, 32, |c, y, x| {
            ((c * 7 + y * 3 + x * 5) % 29) as f32 / 29.0
        })
    }

    #[test]
    fn identity_parameters() {
        let x = sample();
        assert_eq!(
            corrupt(&x, &CorruptionSpec::gaussian_noise(0.0, 9)).unwrap(),
            x
        );
        let crop = corrupt(&x, &CorruptionSpec::center_crop(1.0)).unwrap();
        assert!(crop.max_abs_diff(&x).unwrap() <= 1e-6);
    }

    #[test]
    fn jpeg_max_quality_on_gray() {
        let x = ImageTensor::<f32>::filled(3, 32, 32, 0.5);
        let y = corrupt(&x, &CorruptionSpec::jpeg(100)).unwrap();
        assert!(y.max_abs_diff(&x).unwrap() <= 2.0 / 255.0);
    }

    #[test]
    fn noise_is_seeded_and_clipped() {
        let x = sample();
        let a = corrupt(&x, &CorruptionSpec::gaussian_noise(0.3, 5)).unwrap();
        let b = corrupt(&x, &CorruptionSpec::gaussian_noise(0.3, 5)).unwrap();
        let c = corrupt(&x, &CorruptionSpec::gaussian_noise(0.3, 6)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.data().iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn shape_is_preserved() {
        let x = sample();
        for spec in [
            CorruptionSpec::jpeg(30),
            CorruptionSpec::center_crop(0.5),
            CorruptionSpec::center_crop(0.01),
            CorruptionSpec::gaussian_noise(0.1, 1),
        ] {
            assert_eq!(corrupt(&x, &spec).unwrap().dims(), x.dims(), "{spec}");
        }
    }

    #[test]
    fn parameter_ranges() {
        for bad in [
            "jpeg=0",
            "jpeg=101",
            "jpeg=50.5",
            "center_crop=0",
            "center_crop=1.2",
            "gaussian_noise=-0.1",
            "blur=3",
            "jpeg",
        ] {
            assert!(bad.parse::<CorruptionSpec>().is_err(), "{bad}");
        }
        let s: CorruptionSpec = "gaussian_noise=0.05,seed=3".parse().unwrap();
        assert_eq!(s, CorruptionSpec::gaussian_noise(0.05, 3));
        assert_eq!(
            "jpeg=90".parse::<CorruptionSpec>().unwrap(),
            CorruptionSpec::jpeg(90)
        );
    }

    #[test]
    fn serializes_integral_parameters_as_integers() {
        let json = serde_json::to_string(&CorruptionSpec::jpeg(90)).unwrap();
        assert_eq!(json, r#"{"kind":"jpeg","parameter":90}"#);
        let back: CorruptionSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, CorruptionSpec::jpeg(90));
    }
}
