use std::fmt;

use crate::imgproc::{ImageRgb, ImageVec3};
use crate::slic::{AccumBuffer, LabelMap, SuperpixelMap};

/// Stage primitives a backend must schedule. The per-pixel and per-cluster
/// math comes from [`crate::slic`] and [`crate::connectivity`]; a backend only
/// decides how the work-items are distributed.
pub(crate) trait Backend: Send + Sync + fmt::Debug {
    fn convert(&self, src: &ImageRgb, dst: &mut ImageVec3);

    fn init_centers(&self, img: &ImageVec3, perturb: bool, map: &mut SuperpixelMap);

    fn associate(
        &self,
        img: &ImageVec3,
        map: &SuperpixelMap,
        spatial_weight: f64,
        labels: &mut LabelMap,
    );

    /// Accumulate strips into `accum`, then reduce them into `map`.
    fn update(
        &self,
        img: &ImageVec3,
        labels: &LabelMap,
        tile_len: usize,
        accum: &mut AccumBuffer,
        map: &mut SuperpixelMap,
    );

    /// Two weak passes; `scratch` must have the dimensions of `labels`.
    fn enforce_weak(&self, labels: &mut LabelMap, scratch: &mut LabelMap);
}
