use super::{ImageRgb, Rgb8};
use crate::error::{Error, Result};
use crate::slic::LabelMap;

/// Marks every pixel that has a 4-neighbor carrying a different label.
pub fn boundary_mask(labels: &LabelMap) -> Vec<bool> {
    let (w, h) = labels.dims();
    let l = labels.pixels();
    let mut mask = vec![false; w * h];
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            let own = l[i];
            mask[i] = (x > 0 && l[i - 1] != own)
                || (x + 1 < w && l[i + 1] != own)
                || (y > 0 && l[i - w] != own)
                || (y + 1 < h && l[i + w] != own);
        }
    }
    mask
}

/// Returns a copy of `img` with superpixel boundaries painted in `color`.
pub fn draw_boundaries(img: &ImageRgb, labels: &LabelMap, color: Rgb8) -> Result<ImageRgb> {
    if img.dims() != labels.dims() {
        return Err(Error::DimensionMismatch {
            expected: img.dims(),
            actual: labels.dims(),
        });
    }
    let mut out = img.clone();
    for (px, edge) in out.pixels_mut().iter_mut().zip(boundary_mask(labels)) {
        if edge {
            *px = color;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imgproc::Image;
    use proptest::prelude::*;

    const RED: Rgb8 = [255, 0, 0];

    #[test]
    fn uniform_labels_leave_image_untouched() {
        let img = Image::from_fn(5, 4, |x, y| [x as u8, y as u8, 9]);
        let labels = Image::filled(5, 4, 3u32);
        assert_eq!(draw_boundaries(&img, &labels, RED).unwrap(), img);
    }

    #[test]
    fn two_pixel_split() {
        let img = Image::filled(2, 1, [0u8; 3]);
        let labels = Image::new(2, 1, vec![0u32, 1]).unwrap();
        let out = draw_boundaries(&img, &labels, RED).unwrap();
        assert_eq!(out.pixels(), &[RED, RED]);
    }

    #[test]
    fn left_right_halves() {
        let img = Image::filled(4, 4, [10u8; 3]);
        let labels = Image::from_fn(4, 4, |x, _| u32::from(x >= 2));
        let out = draw_boundaries(&img, &labels, RED).unwrap();
        let mut recolored = 0;
        for y in 0..4 {
            for x in 0..4 {
                let painted = out.get(x, y) == RED;
                assert_eq!(painted, x == 1 || x == 2, "pixel ({x},{y})");
                recolored += usize::from(painted);
            }
        }
        assert_eq!(recolored, 8);
    }

    #[test]
    fn dimension_mismatch() {
        let img = Image::filled(2, 2, [0u8; 3]);
        let labels = Image::filled(2, 3, 0u32);
        assert!(matches!(
            draw_boundaries(&img, &labels, RED),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn interior_pixels_never_recolored(w in 1usize..10, h in 1usize..10, raw in proptest::collection::vec(0u32..3, 100)) {
            let labels = Image::from_fn(w, h, |x, y| raw[(y * w + x) % raw.len()]);
            let img = Image::filled(w, h, [1u8, 2, 3]);
            let out = draw_boundaries(&img, &labels, RED).unwrap();
            prop_assert_eq!(out.dims(), img.dims());
            for y in 0..h {
                for x in 0..w {
                    let own = labels.get(x, y);
                    let mut same = true;
                    if x > 0 { same &= labels.get(x - 1, y) == own; }
                    if x + 1 < w { same &= labels.get(x + 1, y) == own; }
                    if y > 0 { same &= labels.get(x, y - 1) == own; }
                    if y + 1 < h { same &= labels.get(x, y + 1) == own; }
                    if same {
                        prop_assert_eq!(out.get(x, y), [1, 2, 3]);
                    }
                }
            }
        }
    }
}
