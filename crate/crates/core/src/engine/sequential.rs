use super::backend::Backend;
use crate::connectivity::weak_pass_rows;
use crate::imgproc::{convert_pixel, ImageRgb, ImageVec3};
use crate::slic::{
    accumulate_into, associate_rows, init_center, perturb_center, reduce_into, AccumBuffer,
    LabelMap, SuperpixelMap,
};

/// Single-worker reference backend: every stage runs in plain scan order.
#[derive(Debug, Default)]
pub(crate) struct Sequential;

impl Backend for Sequential {
    fn convert(&self, src: &ImageRgb, dst: &mut ImageVec3) {
        let space = dst.space();
        for (d, &s) in dst.pixels_mut().iter_mut().zip(src.pixels()) {
            *d = convert_pixel(s, space);
        }
    }

    fn init_centers(&self, img: &ImageVec3, perturb: bool, map: &mut SuperpixelMap) {
        let grid = *map.grid();
        for (id, rec) in map.records_mut().iter_mut().enumerate() {
            *rec = init_center(img, &grid, id);
            if perturb {
                *rec = perturb_center(img, rec);
            }
        }
    }

    fn associate(
        &self,
        img: &ImageVec3,
        map: &SuperpixelMap,
        spatial_weight: f64,
        labels: &mut LabelMap,
    ) {
        associate_rows(img, map, spatial_weight, 0, labels.pixels_mut());
    }

    fn update(
        &self,
        img: &ImageVec3,
        labels: &LabelMap,
        tile_len: usize,
        accum: &mut AccumBuffer,
        map: &mut SuperpixelMap,
    ) {
        accumulate_into(img, labels, map.grid(), tile_len, accum);
        reduce_into(accum, map);
    }

    fn enforce_weak(&self, labels: &mut LabelMap, scratch: &mut LabelMap) {
        let (w, h) = labels.dims();
        for _ in 0..2 {
            weak_pass_rows(labels.pixels(), w, h, 0, scratch.pixels_mut());
            std::mem::swap(labels, scratch);
        }
    }
}
