use std::io::Cursor;
use std::path::Path;

use image::{ImageFormat, ImageReader, RgbImage};

use crate::error::{Result, WarpadError};
use crate::scalar::Scalar;
use crate::tensor::ImageTensor;

/// Decodes PNG/JPEG/WebP into a 3-channel `[0, 1]` tensor.
///
/// Grayscale is replicated across channels and alpha is dropped.
pub fn load_image<T: Scalar>(path: &Path) -> Result<ImageTensor<T>> {
    let reader = ImageReader::open(path)
        .map_err(|e| WarpadError::ingestion(path, e))?
        .with_guessed_format()
        .map_err(|e| WarpadError::ingestion(path, e))?;
    let decoded = reader
        .decode()
        .map_err(|e| WarpadError::ingestion(path, e))?;
    Ok(from_rgb8(&decoded.into_rgb8()))
}

pub fn decode_image<T: Scalar>(bytes: &[u8]) -> Result<ImageTensor<T>> {
    let decoded =
        image::load_from_memory(bytes).map_err(|e| WarpadError::ingestion("<memory>", e))?;
    Ok(from_rgb8(&decoded.into_rgb8()))
}

pub fn from_rgb8<T: Scalar>(img: &RgbImage) -> ImageTensor<T> {
    let (w, h) = img.dimensions();
    let max = T::of(255.0);
    ImageTensor::from_fn(3, h as usize, w as usize, |c, y, x| {
        T::of(img.get_pixel(x as u32, y as u32)[c] as f64) / max
    })
}

/// Quantizes to 8 bits (round-to-nearest, clamped). Non-RGB tensors are rejected.
pub fn to_rgb8<T: Scalar>(x: &ImageTensor<T>) -> Result<RgbImage> {
    let (channels, h, w) = x.dims();
    if channels != 3 {
        return Err(WarpadError::validation(format!(
            "expected a 3-channel image, got {channels}"
        )));
    }
    let quantize = |v: T| (v.as_f64() * 255.0).round().clamp(0.0, 255.0) as u8;
    Ok(RgbImage::from_fn(w as u32, h as u32, |px, py| {
        let (px, py) = (px as usize, py as usize);
        image::Rgb([
            quantize(x.get(0, py, px)),
            quantize(x.get(1, py, px)),
            quantize(x.get(2, py, px)),
        ])
    }))
}

pub fn save_png<T: Scalar>(x: &ImageTensor<T>, path: &Path) -> Result<()> {
    to_rgb8(x)?
        .save_with_format(path, ImageFormat::Png)
        .map_err(|e| WarpadError::ingestion(path, e))
}

pub fn encode_png<T: Scalar>(x: &ImageTensor<T>) -> Result<Vec<u8>> {
    let mut buf = Cursor::new(Vec::new());
    to_rgb8(x)?
        .write_to(&mut buf, ImageFormat::Png)
        .map_err(|e| WarpadError::validation(e.to_string()))?;
    Ok(buf.into_inner())
}

#[cfg(test)]
mod tests {
    use super::*;
    use image::{GrayImage, Luma, Rgba, RgbaImage};

    #[test]
    fn white_black_and_gray_pixels() {
        let dir = tempfile::tempdir().unwrap();
        let white = dir.path().join("white.png");
        let black = dir.path().join("black.png");
        RgbImage::from_pixel(1, 1, image::Rgb([255, 255, 255]))
            .save(&white)
            .unwrap();
        RgbImage::from_pixel(1, 1, image::Rgb([0, 0, 0]))
            .save(&black)
            .unwrap();
        let w = load_image::<f32>(&white).unwrap();
        let b = load_image::<f32>(&black).unwrap();
        assert_eq!(w.dims(), (3, 1, 1));
        assert!(w.data().iter().all(|&v| v == 1.0));
        assert!(b.data().iter().all(|&v| v == 0.0));

        let gray = dir.path().join("gray.png");
        GrayImage::from_pixel(2, 1, Luma([128]))
            .save(&gray)
            .unwrap();
        let g = load_image::<f64>(&gray).unwrap();
        assert_eq!(g.dims(), (3, 1, 2));
        assert!(g.data().iter().all(|&v| (v - 128.0 / 255.0).abs() < 1e-12));
    }

    #[test]
    fn alpha_is_dropped() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("rgba.png");
        RgbaImage::from_pixel(1, 1, Rgba([10, 20, 30, 0]))
            .save(&p)
            .unwrap();
        let t = load_image::<f64>(&p).unwrap();
        assert_eq!(t.dims(), (3, 1, 1));
        assert!((t.get(2, 0, 0) - 30.0 / 255.0).abs() < 1e-12);
    }

    #[test]
    fn unreadable_files_name_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("garbage.png");
        std::fs::write(&p, b"not an image").unwrap();
        let err = load_image::<f32>(&p).unwrap_err();
        assert!(matches!(err, WarpadError::Ingestion { .. }));
        assert!(err.to_string().contains("garbage.png"));
        assert!(load_image::<f32>(&dir.path().join("missing.png")).is_err());
    }

    #[test]
    fn png_round_trip_is_exact_for_8bit_values() {
        let x = ImageTensor::<f32>::from_fn(3, 4, 5, |c, y, x| {
            ((c * 40 + y * 9 + x) % 256) as f32 / 255.0
        });
        let back = decode_image::<f32>(&encode_png(&x).unwrap()).unwrap();
        assert_eq!(back, x);
    }
}
