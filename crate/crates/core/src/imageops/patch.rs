use super::resize::rescale;
use crate::error::{Result, WarpadError};
use crate::scalar::Scalar;
use crate::tensor::ImageTensor;

/// Non-overlapping `d_patch x d_patch` tiles of a rescaled image, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchGrid<T> {
    pub patches: Vec<ImageTensor<T>>,
    pub grid_rows: usize,
    pub grid_cols: usize,
    /// `(height, width)` of the image that was tiled.
    pub source_dims: (usize, usize),
}

impl<T: Scalar> PatchGrid<T> {
    pub fn len(&self) -> usize {
        self.patches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patches.is_empty()
    }

    /// Tiles `x` exactly; both sides must be multiples of `d_patch`.
    pub fn tile(x: &ImageTensor<T>, d_patch: usize) -> Result<Self> {
        let (_, h, w) = x.dims();
        if d_patch == 0 || h % d_patch != 0 || w % d_patch != 0 {
            return Err(WarpadError::config(format!(
                "image {h}x{w} cannot be tiled by {d_patch}x{d_patch} patches"
            )));
        }
        let grid_rows = h / d_patch;
        let grid_cols = w / d_patch;
        let mut patches = Vec::with_capacity(grid_rows * grid_cols);
        for r in 0..grid_rows {
            for c in 0..grid_cols {
                patches.push(x.crop(r * d_patch, c * d_patch, d_patch, d_patch)?);
            }
        }
        Ok(PatchGrid {
            patches,
            grid_rows,
            grid_cols,
            source_dims: (h, w),
        })
    }

    /// Reassembles the tiled image.
    pub fn assemble(&self) -> Result<ImageTensor<T>> {
        let first = self
            .patches
            .first()
            .ok_or_else(|| WarpadError::validation("empty patch grid"))?;
        let (channels, ph, pw) = first.dims();
        let (h, w) = self.source_dims;
        if self.patches.len() != self.grid_rows * self.grid_cols
            || ph * self.grid_rows != h
            || pw * self.grid_cols != w
        {
            return Err(WarpadError::Structural(
                "patch grid metadata is inconsistent".into(),
            ));
        }
        let mut out = ImageTensor::zeros(channels, h, w);
        for (i, p) in self.patches.iter().enumerate() {
            let (y0, x0) = ((i / self.grid_cols) * ph, (i % self.grid_cols) * pw);
            for c in 0..channels {
                for y in 0..ph {
                    for x in 0..pw {
                        out.set(c, y0 + y, x0 + x, p.get(c, y, x));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `n_patch = (d_rescale / d_patch)^2`, or a configuration error naming both values.
pub fn patch_count(d_rescale: usize, d_patch: usize) -> Result<usize> {
    if d_patch == 0 || d_rescale == 0 || !d_rescale.is_multiple_of(d_patch) {
        return Err(WarpadError::config(format!(
            "d_rescale={d_rescale} is not a positive multiple of d_patch={d_patch}"
        )));
    }
    let per_side = d_rescale / d_patch;
    Ok(per_side * per_side)
}

/// Rescale to `d_rescale x d_rescale`, then tile into `d_patch` patches.
pub fn rescale_n_patchify<T: Scalar>(
    x: &ImageTensor<T>,
    d_rescale: usize,
    d_patch: usize,
) -> Result<PatchGrid<T>> {
    patch_count(d_rescale, d_patch)?;
    PatchGrid::tile(&rescale(x, d_rescale)?, d_patch)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_sizes() {
        assert_eq!(patch_count(1344, 224).unwrap(), 36);
        assert_eq!(patch_count(896, 224).unwrap(), 16);
        assert_eq!(patch_count(224, 224).unwrap(), 1);
        let err = patch_count(900, 224).unwrap_err().to_string();
        assert!(err.contains("900") && err.contains("224"), "{err}");
    }

    #[test]
    fn tiles_are_row_major_and_reassemble_exactly() {
        let x = ImageTensor::<f32>::from_fn(3, 12, 12, |c, y, x| (c * 144 + y * 12 + x) as f32);
        let grid = PatchGrid::tile(&x, 4).unwrap();
        assert_eq!((grid.grid_rows, grid.grid_cols, grid.len()), (3, 3, 9));
        // patch 1 is the top row, second column
        assert_eq!(grid.patches[1].get(0, 0, 0), 4.0);
        assert_eq!(grid.patches[3].get(0, 0, 0), 48.0);
        assert_eq!(grid.assemble().unwrap(), x);
    }

    #[test]
    fn single_patch_equals_rescale() {
        let x = ImageTensor::<f32>::from_fn(3, 30, 50, |c, y, x| ((c + y + x) % 7) as f32 / 7.0);
        let grid = rescale_n_patchify(&x, 16, 16).unwrap();
        assert_eq!(grid.len(), 1);
        assert_eq!(grid.patches[0], rescale(&x, 16).unwrap());
    }
}
