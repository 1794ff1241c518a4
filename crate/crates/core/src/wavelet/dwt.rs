//! Separable 2D multilevel DWT.
//!
//! Analysis computes `c[k] = sum_j h[j] * x_ext[2k + 1 - j]` on the extended
//! signal. Synthesis inverts it with `x[m] = sum_k c[k] * g[m + F - 2 - 2k]`,
//! summed over the low and high bands. For `Symmetric` and `Zero` the band
//! length is `floor((n + F - 1) / 2)`; `Periodic` is the periodized transform
//! with `ceil(n / 2)` coefficients (odd lengths are padded by repeating the
//! last sample and cropped on the way back) and a `F/2 - 1` sample advance.

use super::filters::{Boundary, FilterBank, WaveletSpec};
use crate::error::{Result, WarpadError};
use crate::scalar::Scalar;
use crate::tensor::{ImageTensor, Plane};

/// Detail bands of one channel at one level.
///
/// `lh`: low-pass along width, high-pass along height (horizontal edges).
/// `hl`: high-pass along width, low-pass along height (vertical edges).
/// `hh`: high-pass along both axes.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailBands<T> {
    pub lh: Plane<T>,
    pub hl: Plane<T>,
    pub hh: Plane<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveletPyramid<T> {
    pub spec: WaveletSpec,
    /// Deepest-level approximation, one plane per channel.
    pub approx: Vec<Plane<T>>,
    /// `details[0]` is the finest level; `details[level][channel]`.
    pub details: Vec<Vec<DetailBands<T>>>,
    /// Input `(height, width)` seen by each level, finest first.
    pub shapes: Vec<(usize, usize)>,
}

impl<T: Scalar> WaveletPyramid<T> {
    pub fn channels(&self) -> usize {
        self.approx.len()
    }

    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn zero_approx(&mut self) {
        self.approx.iter_mut().for_each(Plane::fill_zero);
    }

    pub fn zero_details(&mut self) {
        for level in &mut self.details {
            for bands in level {
                bands.lh.fill_zero();
                bands.hl.fill_zero();
                bands.hh.fill_zero();
            }
        }
    }

    /// Sum of squares of every coefficient.
    pub fn energy(&self) -> f64 {
        let approx: f64 = self.approx.iter().map(Plane::sum_squares).sum();
        let details: f64 = self
            .details
            .iter()
            .flatten()
            .map(|b| b.lh.sum_squares() + b.hl.sum_squares() + b.hh.sum_squares())
            .sum();
        approx + details
    }

    /// Coefficient-wise linear combination `a * self + b * other`.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Result<Self> {
        if self.shapes != other.shapes || self.channels() != other.channels() {
            return Err(WarpadError::Structural(
                "cannot combine pyramids of different shapes".into(),
            ));
        }
        let mix = |p: &Plane<T>, q: &Plane<T>| Plane {
            rows: p.rows,
            cols: p.cols,
            data: p
                .data
                .iter()
                .zip(&q.data)
                .map(|(&x, &y)| a * x + b * y)
                .collect(),
        };
        Ok(WaveletPyramid {
            spec: self.spec,
            approx: self
                .approx
                .iter()
                .zip(&other.approx)
                .map(|(p, q)| mix(p, q))
                .collect(),
            details: self
                .details
                .iter()
                .zip(&other.details)
                .map(|(l1, l2)| {
                    l1.iter()
                        .zip(l2)
                        .map(|(d1, d2)| DetailBands {
                            lh: mix(&d1.lh, &d2.lh),
                            hl: mix(&d1.hl, &d2.hl),
                            hh: mix(&d1.hh, &d2.hh),
                        })
                        .collect()
                })
                .collect(),
            shapes: self.shapes.clone(),
        })
    }
}

/// Number of coefficients per band for an input of length `n`.
pub fn band_len(n: usize, filter_len: usize, boundary: Boundary) -> usize {
    match boundary {
        Boundary::Periodic => n.div_ceil(2),
        Boundary::Symmetric | Boundary::Zero => (n + filter_len - 1) / 2,
    }
}

struct Filters<T> {
    dec_lo: Vec<T>,
    dec_hi: Vec<T>,
    rec_lo: Vec<T>,
    rec_hi: Vec<T>,
}

impl<T: Scalar> Filters<T> {
    fn new(fb: FilterBank) -> Self {
        let cast = |s: &[f64]| s.iter().map(|&v| T::of(v)).collect();
        Filters {
            dec_lo: cast(fb.dec_lo),
            dec_hi: cast(fb.dec_hi),
            rec_lo: cast(fb.rec_lo),
            rec_hi: cast(fb.rec_hi),
        }
    }

    fn len(&self) -> usize {
        self.dec_lo.len()
    }
}

#[inline]
fn extended<T: Scalar>(x: &[T], i: isize, boundary: Boundary) -> T {
    let n = x.len() as isize;
    if (0..n).contains(&i) {
        return x[i as usize];
    }
    match boundary {
        Boundary::Zero => T::zero(),
        Boundary::Symmetric => {
            let m = i.rem_euclid(2 * n);
            if m < n {
                x[m as usize]
            } else {
                x[(2 * n - 1 - m) as usize]
            }
        }
        Boundary::Periodic => {
            // odd lengths behave as if padded with one copy of the last sample
            let np = n + (n & 1);
            let m = i.rem_euclid(np);
            x[m.min(n - 1) as usize]
        }
    }
}

/// The periodized transform is advanced by `F/2 - 1` samples so its
/// coefficients line up with the PyWavelets `periodization` convention.
#[inline]
fn periodic_shift(boundary: Boundary, flen: isize) -> isize {
    match boundary {
        Boundary::Periodic => flen / 2 - 1,
        _ => 0,
    }
}

fn analyze_1d<T: Scalar>(x: &[T], f: &Filters<T>, boundary: Boundary, lo: &mut [T], hi: &mut [T]) {
    let flen = f.len() as isize;
    let shift = periodic_shift(boundary, flen);
    for k in 0..lo.len() {
        let base = 2 * k as isize + 1 + shift;
        let mut a = T::zero();
        let mut d = T::zero();
        if base - (flen - 1) >= 0 && (base as usize) < x.len() {
            for j in 0..flen as usize {
                let v = x[base as usize - j];
                a += f.dec_lo[j] * v;
                d += f.dec_hi[j] * v;
            }
        } else {
            for j in 0..flen {
                let v = extended(x, base - j, boundary);
                a += f.dec_lo[j as usize] * v;
                d += f.dec_hi[j as usize] * v;
            }
        }
        lo[k] = a;
        hi[k] = d;
    }
}

fn synthesize_1d<T: Scalar>(lo: &[T], hi: &[T], f: &Filters<T>, boundary: Boundary, out: &mut [T]) {
    let flen = f.len() as isize;
    let m_len = lo.len() as isize;
    let shift = periodic_shift(boundary, flen);
    for (m, o) in out.iter_mut().enumerate() {
        let m = m as isize;
        let shifted = m + flen - 2 - shift;
        // every k with 0 <= shifted - 2k < flen
        let first = (shifted - flen + 2).div_euclid(2);
        let last = shifted.div_euclid(2);
        let mut acc = T::zero();
        for k in first..=last {
            let idx = (shifted - 2 * k) as usize;
            let k = match boundary {
                Boundary::Periodic => k.rem_euclid(m_len),
                _ => k,
            };
            if (0..m_len).contains(&k) {
                let k = k as usize;
                acc += lo[k] * f.rec_lo[idx] + hi[k] * f.rec_hi[idx];
            }
        }
        *o = acc;
    }
}

struct Level<T> {
    ll: Plane<T>,
    bands: DetailBands<T>,
}

fn dwt2_plane<T: Scalar>(p: &Plane<T>, f: &Filters<T>, boundary: Boundary) -> Level<T> {
    let (rows, cols) = p.shape();
    let wc = band_len(cols, f.len(), boundary);
    let hc = band_len(rows, f.len(), boundary);

    // along width
    let mut row_lo = Plane::zeros(rows, wc);
    let mut row_hi = Plane::zeros(rows, wc);
    for r in 0..rows {
        analyze_1d(
            p.row(r),
            f,
            boundary,
            &mut row_lo.data[r * wc..(r + 1) * wc],
            &mut row_hi.data[r * wc..(r + 1) * wc],
        );
    }

    // along height
    let mut ll = Plane::zeros(hc, wc);
    let mut lh = Plane::zeros(hc, wc);
    let mut hl = Plane::zeros(hc, wc);
    let mut hh = Plane::zeros(hc, wc);
    let mut col = vec![T::zero(); rows];
    let mut out_lo = vec![T::zero(); hc];
    let mut out_hi = vec![T::zero(); hc];
    for (src, dst_lo, dst_hi) in [(&row_lo, &mut ll, &mut lh), (&row_hi, &mut hl, &mut hh)] {
        for c in 0..wc {
            for (r, v) in col.iter_mut().enumerate() {
                *v = src.data[r * wc + c];
            }
            analyze_1d(&col, f, boundary, &mut out_lo, &mut out_hi);
            for r in 0..hc {
                dst_lo.data[r * wc + c] = out_lo[r];
                dst_hi.data[r * wc + c] = out_hi[r];
            }
        }
    }
    Level {
        ll,
        bands: DetailBands { lh, hl, hh },
    }
}

fn idwt2_plane<T: Scalar>(
    ll: &Plane<T>,
    bands: &DetailBands<T>,
    f: &Filters<T>,
    boundary: Boundary,
    (rows, cols): (usize, usize),
) -> Plane<T> {
    let (hc, wc) = ll.shape();
    let mut row_lo = Plane::zeros(rows, wc);
    let mut row_hi = Plane::zeros(rows, wc);
    let mut lo_col = vec![T::zero(); hc];
    let mut hi_col = vec![T::zero(); hc];
    let mut out = vec![T::zero(); rows];
    for (src_lo, src_hi, dst) in [
        (ll, &bands.lh, &mut row_lo),
        (&bands.hl, &bands.hh, &mut row_hi),
    ] {
        for c in 0..wc {
            for r in 0..hc {
                lo_col[r] = src_lo.data[r * wc + c];
                hi_col[r] = src_hi.data[r * wc + c];
            }
            synthesize_1d(&lo_col, &hi_col, f, boundary, &mut out);
            for (r, v) in out.iter().enumerate() {
                dst.data[r * wc + c] = *v;
            }
        }
    }

    let mut result = Plane::zeros(rows, cols);
    for r in 0..rows {
        synthesize_1d(
            row_lo.row(r),
            row_hi.row(r),
            f,
            boundary,
            &mut result.data[r * cols..(r + 1) * cols],
        );
    }
    result
}

/// Forward multilevel transform, applied to each channel independently.
pub fn dwt2_multilevel<T: Scalar>(
    x: &ImageTensor<T>,
    spec: &WaveletSpec,
) -> Result<WaveletPyramid<T>> {
    x.ensure_finite()?;
    spec.validate_for(x.height(), x.width())?;
    let f = Filters::new(spec.family.filter_bank());

    let mut current: Vec<Plane<T>> = (0..x.channels()).map(|c| x.channel_plane(c)).collect();
    let mut details = Vec::with_capacity(spec.levels);
    let mut shapes = Vec::with_capacity(spec.levels);
    for _ in 0..spec.levels {
        shapes.push(current[0].shape());
        let mut next = Vec::with_capacity(current.len());
        let mut level_bands = Vec::with_capacity(current.len());
        for plane in &current {
            let Level { ll, bands } = dwt2_plane(plane, &f, spec.boundary);
            next.push(ll);
            level_bands.push(bands);
        }
        details.push(level_bands);
        current = next;
    }
    Ok(WaveletPyramid {
        spec: *spec,
        approx: current,
        details,
        shapes,
    })
}

/// Inverse of [`dwt2_multilevel`]; restores the recorded original size.
pub fn idwt2_multilevel<T: Scalar>(
    p: &WaveletPyramid<T>,
    spec: &WaveletSpec,
) -> Result<ImageTensor<T>> {
    check_pyramid(p, spec)?;
    let f = Filters::new(spec.family.filter_bank());
    let mut current = p.approx.clone();
    for level in (0..p.levels()).rev() {
        let shape = p.shapes[level];
        current = current
            .iter()
            .zip(&p.details[level])
            .map(|(ll, bands)| idwt2_plane(ll, bands, &f, spec.boundary, shape))
            .collect();
    }
    ImageTensor::from_planes(current)
}

fn check_pyramid<T: Scalar>(p: &WaveletPyramid<T>, spec: &WaveletSpec) -> Result<()> {
    let err = |m: String| Err(WarpadError::Structural(m));
    if p.spec.family != spec.family || p.spec.boundary != spec.boundary {
        return err(format!(
            "pyramid built with {} but inverse requested with {}",
            p.spec, spec
        ));
    }
    if p.levels() != spec.levels || p.shapes.len() != spec.levels {
        return err(format!(
            "pyramid has {} levels / {} shapes, spec asks for {}",
            p.levels(),
            p.shapes.len(),
            spec.levels
        ));
    }
    let channels = p.channels();
    if channels == 0 {
        return err("pyramid has no channels".into());
    }
    let flen = spec.family.filter_bank().len();
    for (level, &(rows, cols)) in p.shapes.iter().enumerate() {
        let want = (
            band_len(rows, flen, spec.boundary),
            band_len(cols, flen, spec.boundary),
        );
        if p.details[level].len() != channels {
            return err(format!(
                "level {level} has {} channels, expected {channels}",
                p.details[level].len()
            ));
        }
        for bands in &p.details[level] {
            for band in [&bands.lh, &bands.hl, &bands.hh] {
                if band.shape() != want || band.data.len() != want.0 * want.1 {
                    return err(format!(
                        "level {level} band is {:?}, expected {want:?} for input {rows}x{cols}",
                        band.shape()
                    ));
                }
            }
        }
        let next = if level + 1 < p.levels() {
            p.shapes[level + 1]
        } else {
            p.approx[0].shape()
        };
        if next != want {
            return err(format!(
                "level {level} output {want:?} does not feed next shape {next:?}"
            ));
        }
    }
    let deepest = p.approx[0].shape();
    if p.approx
        .iter()
        .any(|a| a.shape() != deepest || a.data.len() != deepest.0 * deepest.1)
    {
        return err("approximation planes have inconsistent shapes".into());
    }
    Ok(())
}

/// `HF(x)`: reconstruction with the deepest approximation band zeroed.
pub fn high_frequency_component<T: Scalar>(
    x: &ImageTensor<T>,
    spec: &WaveletSpec,
) -> Result<ImageTensor<T>> {
    let mut p = dwt2_multilevel(x, spec)?;
    p.zero_approx();
    idwt2_multilevel(&p, spec)
}

/// Reconstruction with every detail band zeroed; `x = LF(x) + HF(x)`.
pub fn low_frequency_component<T: Scalar>(
    x: &ImageTensor<T>,
    spec: &WaveletSpec,
) -> Result<ImageTensor<T>> {
    let mut p = dwt2_multilevel(x, spec)?;
    p.zero_details();
    idwt2_multilevel(&p, spec)
}
