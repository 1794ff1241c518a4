//! Ingestion, rescaling, patch tiling and test-time corruptions.

mod corrupt;
mod io;
mod patch;
mod resize;

pub use corrupt::{corrupt, CorruptionKind, CorruptionSpec};
pub use io::{decode_image, encode_png, from_rgb8, load_image, save_png, to_rgb8};
pub use patch::{patch_count, rescale_n_patchify, PatchGrid};
pub use resize::{rescale, resize};
