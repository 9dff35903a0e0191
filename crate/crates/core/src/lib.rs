//! SLIC superpixel segmentation with a single-worker reference backend and a
//! data-parallel backend that produces bit-identical label maps.
//!
//! ```
//! use superpix::{segment, BackendKind, Image, Settings};
//!
//! let img = Image::filled(32, 32, [120u8, 80, 40]);
//! let settings = Settings::with_spixel_size(32, 32, 8);
//! let result = segment(&img, settings, BackendKind::Parallel { workers: 2 }).unwrap();
//! assert_eq!(result.labels.get(31, 31), 15);
//! ```

pub mod connectivity;
pub mod engine;
pub mod error;
pub mod imgproc;
pub mod slic;

pub use connectivity::{enforce_strict, enforce_weak, ConnectivityMode};
pub use engine::{default_workers, segment, BackendKind, SegEngine, SegResult, StageTiming};
pub use error::{Error, Result};
pub use imgproc::{
    convert_color_space, draw_boundaries, load_image, save_image, ColorSpace, Image, ImageRgb,
    ImageVec3, Rgb8,
};
pub use slic::{
    compute_grid, GridSpec, LabelMap, Settings, SpixelInfo, SuperpixelMap, SuperpixelSize,
};
