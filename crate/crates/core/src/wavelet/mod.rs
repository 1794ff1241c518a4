//! Multilevel 2D discrete wavelet transform and the high-frequency residual.

mod dump;
mod dwt;
mod filters;
mod tables;

pub use dump::{dump_pyramid, PlaneEntry, PyramidManifest};
pub use dwt::{
    band_len, dwt2_multilevel, high_frequency_component, idwt2_multilevel, low_frequency_component,
    DetailBands, WaveletPyramid,
};
pub use filters::{Boundary, FilterBank, WaveletFamily, WaveletSpec};
