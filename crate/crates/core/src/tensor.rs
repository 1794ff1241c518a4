//! Channel-major image storage and 2D coefficient planes.

use crate::error::{Result, WarpadError};
use crate::scalar::Scalar;

/// A channel-major image (`data[c * h * w + y * w + x]`), nominally in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageTensor<T> {
    channels: usize,
    height: usize,
    width: usize,
    data: Vec<T>,
}

impl<T: Scalar> ImageTensor<T> {
    /// Builds a tensor, rejecting length mismatches and non-finite values.
    pub fn new(channels: usize, height: usize, width: usize, data: Vec<T>) -> Result<Self> {
        if channels == 0 || height == 0 || width == 0 {
            return Err(WarpadError::validation(format!(
                "image dimensions must be non-zero, got {channels}x{height}x{width}"
            )));
        }
        if data.len() != channels * height * width {
            return Err(WarpadError::validation(format!(
                "data length {} does not match {channels}x{height}x{width}",
                data.len()
            )));
        }
        let tensor = ImageTensor {
            channels,
            height,
            width,
            data,
        };
        tensor.ensure_finite()?;
        Ok(tensor)
    }

    pub fn filled(channels: usize, height: usize, width: usize, value: T) -> Self {
        ImageTensor {
            channels,
            height,
            width,
            data: vec![value; channels * height * width],
        }
    }

    pub fn zeros(channels: usize, height: usize, width: usize) -> Self {
        Self::filled(channels, height, width, T::zero())
    }

    /// Builds a tensor from `f(c, y, x)`.
    pub fn from_fn(
        channels: usize,
        height: usize,
        width: usize,
        mut f: impl FnMut(usize, usize, usize) -> T,
    ) -> Self {
        let mut data = Vec::with_capacity(channels * height * width);
        for c in 0..channels {
            for y in 0..height {
                for x in 0..width {
                    data.push(f(c, y, x));
                }
            }
        }
        ImageTensor {
            channels,
            height,
            width,
            data,
        }
    }

    pub fn ensure_finite(&self) -> Result<()> {
        match self.data.iter().position(|v| !v.is_finite()) {
            None => Ok(()),
            Some(i) => Err(WarpadError::validation(format!(
                "non-finite pixel value at flat index {i}"
            ))),
        }
    }

    #[inline]
    pub fn channels(&self) -> usize {
        self.channels
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    /// `(channels, height, width)`
    #[inline]
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.channels, self.height, self.width)
    }

    #[inline]
    pub fn data(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    #[inline]
    pub fn get(&self, c: usize, y: usize, x: usize) -> T {
        self.data[(c * self.height + y) * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, c: usize, y: usize, x: usize, v: T) {
        self.data[(c * self.height + y) * self.width + x] = v;
    }

    pub fn channel(&self, c: usize) -> &[T] {
        let n = self.height * self.width;
        &self.data[c * n..(c + 1) * n]
    }

    pub fn channel_mut(&mut self, c: usize) -> &mut [T] {
        let n = self.height * self.width;
        &mut self.data[c * n..(c + 1) * n]
    }

    /// Copies channel `c` into a standalone plane.
    pub fn channel_plane(&self, c: usize) -> Plane<T> {
        Plane {
            rows: self.height,
            cols: self.width,
            data: self.channel(c).to_vec(),
        }
    }

    /// Stacks equally-sized planes into a tensor, one plane per channel.
    pub fn from_planes(planes: Vec<Plane<T>>) -> Result<Self> {
        let first = planes
            .first()
            .ok_or_else(|| WarpadError::validation("no planes to stack"))?;
        let (rows, cols) = (first.rows, first.cols);
        if planes.iter().any(|p| p.rows != rows || p.cols != cols) {
            return Err(WarpadError::Structural(
                "planes have differing shapes".into(),
            ));
        }
        let channels = planes.len();
        let mut data = Vec::with_capacity(channels * rows * cols);
        for p in planes {
            data.extend(p.data);
        }
        Ok(ImageTensor {
            channels,
            height: rows,
            width: cols,
            data,
        })
    }

    /// `self - alpha * other`, element-wise.
    pub fn sub_scaled(&self, other: &Self, alpha: T) -> Result<Self> {
        self.check_same_dims(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a - alpha * b)
            .collect();
        Ok(ImageTensor { data, ..*self })
    }

    /// `self + alpha * other`, element-wise.
    pub fn add_scaled(&self, other: &Self, alpha: T) -> Result<Self> {
        self.sub_scaled(other, -alpha)
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        ImageTensor {
            data: self.data.iter().map(|&v| f(v)).collect(),
            ..*self
        }
    }

    pub fn clamp01(&self) -> Self {
        self.map(|v| v.max(T::zero()).min(T::one()))
    }

    pub fn cast<U: Scalar>(&self) -> ImageTensor<U> {
        ImageTensor {
            channels: self.channels,
            height: self.height,
            width: self.width,
            data: self.data.iter().map(|&v| U::of(v.as_f64())).collect(),
        }
    }

    /// Largest absolute element-wise difference; dims must match.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_same_dims(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs())))
    }

    /// Copies the `h x w` window whose top-left corner is `(y0, x0)`.
    pub fn crop(&self, y0: usize, x0: usize, h: usize, w: usize) -> Result<Self> {
        if h == 0 || w == 0 || y0 + h > self.height || x0 + w > self.width {
            return Err(WarpadError::validation(format!(
                "crop {h}x{w} at ({y0},{x0}) exceeds {}x{}",
                self.height, self.width
            )));
        }
        let mut data = Vec::with_capacity(self.channels * h * w);
        for c in 0..self.channels {
            let plane = self.channel(c);
            for y in y0..y0 + h {
                let row = &plane[y * self.width..(y + 1) * self.width];
                data.extend_from_slice(&row[x0..x0 + w]);
            }
        }
        Ok(ImageTensor {
            channels: self.channels,
            height: h,
            width: w,
            data,
        })
    }

    fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(WarpadError::validation(format!(
                "dimension mismatch: {:?} vs {:?}",
                self.dims(),
                other.dims()
            )));
        }
        Ok(())
    }
}

/// A single 2D plane in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Plane<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Plane {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(WarpadError::validation("ragged rows"));
        }
        Ok(Plane {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn fill_zero(&mut self) {
        self.data.iter_mut().for_each(|v| *v = T::zero());
    }

    pub fn sum_squares(&self) -> f64 {
        self.data.iter().map(|v| v.as_f64() * v.as_f64()).sum()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_length_and_nan() {
        assert!(ImageTensor::<f32>::new(1, 2, 2, vec![0.0; 3]).is_err());
        assert!(ImageTensor::<f32>::new(1, 1, 2, vec![0.0, f32::NAN]).is_err());
        assert!(ImageTensor::<f64>::new(1, 1, 1, vec![f64::INFINITY]).is_err());
        assert!(ImageTensor::<f64>::new(3, 2, 2, vec![0.5; 12]).is_ok());
    }

    #[test]
    fn channel_major_indexing() {
        let t = ImageTensor::<f64>::from_fn(2, 2, 3, |c, y, x| (c * 100 + y * 10 + x) as f64);
        assert_eq!(t.get(1, 1, 2), 112.0);
        assert_eq!(t.data()[6 + 3 + 2], 112.0);
        assert_eq!(t.channel(1)[0], 100.0);
    }

    #[test]
    fn crop_window() {
        let t = ImageTensor::<f64>::from_fn(1, 4, 4, |_, y, x| (y * 4 + x) as f64);
        let c = t.crop(1, 2, 2, 2).unwrap();
        assert_eq!(c.data(), &[6.0, 7.0, 10.0, 11.0]);
        assert!(t.crop(3, 3, 2, 2).is_err());
    }
}
