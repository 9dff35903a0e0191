//! Device-agnostic SLIC math: seed grid, centers, distance, association and
//! the center update.
//!
//! Every stage is exposed both as a whole-image function and as a per-item
//! kernel (`associate_pixel`, `accumulate_cluster`, `reduce_cluster`, ...)
//! so that backends only decide scheduling and never re-implement the math.

mod assoc;
mod centers;
mod grid;
mod settings;
mod update;

use crate::imgproc::Image;

pub use assoc::{
    associate_pixel, associate_rows, find_center_association, pixel_point, slic_distance,
    weighted_distance, Point5,
};
pub use centers::{
    center_shift_l1, gradient_magnitude, init_center, init_cluster_centers, perturb_center,
    perturb_centers, pixel_coord, SpixelInfo, SuperpixelMap,
};
pub use grid::{compute_grid, GridSpec};
pub use settings::{
    Settings, SuperpixelSize, DEFAULT_COMPACTNESS, DEFAULT_ITERATIONS, DEFAULT_TILE_LEN,
};
pub use update::{
    accumulate_cluster, accumulate_cluster_stats, reduce_cluster, reduce_cluster_stats, spill_pass,
    tree_sum, AccumBuffer, ClusterSums,
};

pub(crate) use update::{accumulate_into, check_labels, reduce_into};

/// Per-pixel cluster index, row-major.
pub type LabelMap = Image<u32>;
