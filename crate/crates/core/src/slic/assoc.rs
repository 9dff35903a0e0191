use super::centers::{pixel_coord, SpixelInfo, SuperpixelMap};
use super::LabelMap;
use crate::imgproc::{Image, ImageVec3};

/// A pixel as a 5D point: color followed by spatial coordinates.
pub type Point5 = [f64; 5];

#[inline]
pub fn pixel_point(img: &ImageVec3, x: usize, y: usize) -> Point5 {
    let [c0, c1, c2] = img.get(x, y);
    [
        f64::from(c0),
        f64::from(c1),
        f64::from(c2),
        pixel_coord(x),
        pixel_coord(y),
    ]
}

/// Color distance plus spatial distance scaled by `spatial_weight` (m / S).
#[inline]
pub fn weighted_distance(p: &Point5, center: &SpixelInfo, spatial_weight: f64) -> f64 {
    let dl = center.color[0] - p[0];
    let da = center.color[1] - p[1];
    let db = center.color[2] - p[2];
    let dx = center.xy[0] - p[3];
    let dy = center.xy[1] - p[4];
    (dl * dl + da * da + db * db).sqrt() + spatial_weight * (dx * dx + dy * dy).sqrt()
}

/// SLIC distance `d_lab + (m / S) * d_xy`.
pub fn slic_distance(p: &Point5, center: &SpixelInfo, spixel_size: usize, compactness: f64) -> f64 {
    weighted_distance(p, center, compactness / spixel_size as f64)
}

/// Best cluster among the 3x3 cells around the pixel's home cell. Candidates
/// are visited in increasing id order so ties go to the smallest id.
#[inline]
pub fn associate_pixel(
    img: &ImageVec3,
    map: &SuperpixelMap,
    spatial_weight: f64,
    x: usize,
    y: usize,
) -> u32 {
    let grid = map.grid();
    let p = pixel_point(img, x, y);
    let (hr, hc) = grid.home_cell(x, y);
    let ((r0, r1), (c0, c1)) = grid.neighborhood(hr, hc);
    let mut best_id = 0u32;
    let mut best = f64::INFINITY;
    for r in r0..=r1 {
        for c in c0..=c1 {
            let center = map.get(r * grid.cols() + c);
            let d = weighted_distance(&p, center, spatial_weight);
            if d < best {
                best = d;
                best_id = center.id;
            }
        }
    }
    best_id
}

/// Labels a band of whole rows starting at `first_row`; `out.len()` must be a
/// multiple of the image width.
pub fn associate_rows(
    img: &ImageVec3,
    map: &SuperpixelMap,
    spatial_weight: f64,
    first_row: usize,
    out: &mut [u32],
) {
    let w = img.width();
    for (dy, row) in out.chunks_exact_mut(w).enumerate() {
        let y = first_row + dy;
        for (x, label) in row.iter_mut().enumerate() {
            *label = associate_pixel(img, map, spatial_weight, x, y);
        }
    }
}

pub fn find_center_association(img: &ImageVec3, map: &SuperpixelMap, compactness: f64) -> LabelMap {
    assert_eq!(
        img.dims(),
        map.grid().image_dims(),
        "image does not match grid"
    );
    let (w, h) = img.dims();
    let weight = compactness / map.grid().spixel_size() as f64;
    let mut labels = Image::filled(w, h, 0u32);
    associate_rows(img, map, weight, 0, labels.pixels_mut());
    labels
}
