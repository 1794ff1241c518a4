//! Debug dump of a pyramid as raw little-endian f32 planes plus a JSON manifest.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::dwt::WaveletPyramid;
use super::filters::WaveletSpec;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::tensor::Plane;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneEntry {
    pub file: String,
    pub channel: usize,
    /// `approx`, `lh`, `hl` or `hh`.
    pub band: String,
    /// 1-based level; the approximation reports the deepest level.
    pub level: usize,
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PyramidManifest {
    pub spec: WaveletSpec,
    pub shapes: Vec<(usize, usize)>,
    pub planes: Vec<PlaneEntry>,
}

/// Writes `manifest.json` and one `.f32` file per plane into `dir`.
///
/// Plane order: approximation, then for each level (finest first) LH, HL, HH;
/// channels are interleaved within each of those groups.
pub fn dump_pyramid<T: Scalar>(p: &WaveletPyramid<T>, dir: &Path) -> Result<PyramidManifest> {
    fs::create_dir_all(dir)?;
    let mut planes = Vec::new();
    let mut write = |plane: &Plane<T>, channel: usize, band: &str, level: usize| -> Result<()> {
        let file = format!("c{channel}_l{level}_{band}.f32");
        let mut out = fs::File::create(dir.join(&file))?;
        let mut buf = Vec::with_capacity(plane.data.len() * 4);
        for v in &plane.data {
            buf.extend_from_slice(&(v.as_f64() as f32).to_le_bytes());
        }
        out.write_all(&buf)?;
        planes.push(PlaneEntry {
            file,
            channel,
            band: band.to_string(),
            level,
            rows: plane.rows,
            cols: plane.cols,
        });
        Ok(())
    };

    let deepest = p.levels();
    for (c, a) in p.approx.iter().enumerate() {
        write(a, c, "approx", deepest)?;
    }
    for (level, bands) in p.details.iter().enumerate() {
        for band in ["lh", "hl", "hh"] {
            for (c, b) in bands.iter().enumerate() {
                let plane = match band {
                    "lh" => &b.lh,
                    "hl" => &b.hl,
                    _ => &b.hh,
                };
                write(plane, c, band, level + 1)?;
            }
        }
    }

    let manifest = PyramidManifest {
        spec: p.spec,
        shapes: p.shapes.clone(),
        planes,
    };
    fs::write(
        dir.join("manifest.json"),
        serde_json::to_vec_pretty(&manifest)?,
    )?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::ImageTensor;
    use crate::wavelet::{dwt2_multilevel, Boundary, WaveletFamily};

    #[test]
    fn dump_writes_all_planes_in_order() {
        let dir = tempfile::tempdir().unwrap();
        let x = ImageTensor::<f32>::from_fn(3, 16, 12, |c, y, x| (c + y + x) as f32 / 30.0);
        let spec = WaveletSpec::new(WaveletFamily::Haar, 2, Boundary::Symmetric);
        let p = dwt2_multilevel(&x, &spec).unwrap();
        let m = dump_pyramid(&p, dir.path()).unwrap();
        assert_eq!(m.planes.len(), 3 + 2 * 3 * 3);
        assert_eq!(m.planes[0].band, "approx");
        assert_eq!(m.planes[3].band, "lh");
        assert_eq!(m.planes[3].level, 1);
        assert_eq!(m.planes.last().unwrap().band, "hh");

        let raw = fs::read(dir.path().join(&m.planes[0].file)).unwrap();
        assert_eq!(raw.len(), 4 * 4 * 3);
        let first = f32::from_le_bytes(raw[0..4].try_into().unwrap());
        assert_eq!(first, p.approx[0].data[0]);

        let back: PyramidManifest =
            serde_json::from_slice(&fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
