use super::{ColorSpace, ImageRgb, ImageVec3, Rgb8};

// sRGB primaries to XYZ, D65.
const RGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.412_456_4, 0.357_576_1, 0.180_437_5],
    [0.212_672_9, 0.715_152_2, 0.072_175_0],
    [0.019_333_9, 0.119_192_0, 0.950_304_1],
];

// Reference white taken as the image of RGB (1,1,1) so that white maps to
// L = 100, a = b = 0 exactly.
const WHITE: [f64; 3] = [
    RGB_TO_XYZ[0][0] + RGB_TO_XYZ[0][1] + RGB_TO_XYZ[0][2],
    RGB_TO_XYZ[1][0] + RGB_TO_XYZ[1][1] + RGB_TO_XYZ[1][2],
    RGB_TO_XYZ[2][0] + RGB_TO_XYZ[2][1] + RGB_TO_XYZ[2][2],
];

const EPSILON: f64 = 216.0 / 24389.0;
const KAPPA: f64 = 24389.0 / 27.0;

/// Inverse sRGB companding of an 8-bit channel.
#[inline]
pub fn srgb_to_linear(c: u8) -> f64 {
    let c = f64::from(c) / 255.0;
    if c <= 0.04045 {
        c / 12.92
    } else {
        ((c + 0.055) / 1.055).powf(2.4)
    }
}

#[inline]
fn to_xyz(rgb: Rgb8) -> [f64; 3] {
    let lin = rgb.map(srgb_to_linear);
    RGB_TO_XYZ.map(|row| row[0] * lin[0] + row[1] * lin[1] + row[2] * lin[2])
}

#[inline]
fn lab_f(t: f64) -> f64 {
    if t > EPSILON {
        t.cbrt()
    } else {
        (KAPPA * t + 16.0) / 116.0
    }
}

#[inline]
fn to_lab(rgb: Rgb8) -> [f64; 3] {
    let xyz = to_xyz(rgb);
    let xr = xyz[0] / WHITE[0];
    let yr = xyz[1] / WHITE[1];
    let zr = xyz[2] / WHITE[2];
    let (fx, fy, fz) = (lab_f(xr), lab_f(yr), lab_f(zr));
    // Linear branch written as kappa*y so black maps to exactly 0.
    let l = if yr > EPSILON {
        116.0 * fy - 16.0
    } else {
        KAPPA * yr
    };
    [l, 500.0 * (fx - fy), 200.0 * (fy - fz)]
}

/// Converts one 8-bit sRGB pixel into `space`.
#[inline]
pub fn convert_pixel(rgb: Rgb8, space: ColorSpace) -> [f32; 3] {
    let v = match space {
        ColorSpace::Rgb => rgb.map(|c| f64::from(c) / 255.0),
        ColorSpace::Xyz => to_xyz(rgb),
        ColorSpace::Lab => to_lab(rgb),
    };
    v.map(|c| c as f32)
}

pub fn convert_color_space(img: &ImageRgb, target: ColorSpace) -> ImageVec3 {
    let mut out = ImageVec3::zeroed(target, img.width(), img.height());
    for (dst, &src) in out.pixels_mut().iter_mut().zip(img.pixels()) {
        *dst = convert_pixel(src, target);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imgproc::Image;
    use proptest::prelude::*;

    fn assert_close(got: [f32; 3], want: [f64; 3], tol: f64) {
        for i in 0..3 {
            assert!(
                (f64::from(got[i]) - want[i]).abs() <= tol,
                "channel {i}: got {:?}, want {:?}",
                got,
                want
            );
        }
    }

    #[test]
    fn white_and_black_points() {
        assert_close(
            convert_pixel([255; 3], ColorSpace::Lab),
            [100.0, 0.0, 0.0],
            1e-3,
        );
        assert_close(
            convert_pixel([0; 3], ColorSpace::Lab),
            [0.0, 0.0, 0.0],
            1e-3,
        );
    }

    #[test]
    fn golden_brown() {
        // scikit-image 0.2x rgb2lab on (128, 64, 32); it uses a slightly
        // different XYZ matrix, hence the looser tolerance.
        let lab = convert_pixel([128, 64, 32], ColorSpace::Lab);
        assert_close(lab, [34.724_795_9, 24.999_567_7, 31.372_839_7], 1e-3);
        // Same matrix and white as here, evaluated in a standalone script.
        assert_close(lab, [34.724_813_8, 25.000_039_6, 31.372_060_2], 1e-4);
    }

    #[test]
    fn golden_green() {
        let lab = convert_pixel([10, 200, 90], ColorSpace::Lab);
        assert_close(lab, [70.945_772_7, -64.900_312_5, 43.051_706_4], 2.5e-3);
    }

    #[test]
    fn rgb_target_scales_channels() {
        assert_close(
            convert_pixel([255, 51, 0], ColorSpace::Rgb),
            [1.0, 0.2, 0.0],
            1e-7,
        );
    }

    #[test]
    fn xyz_of_white_is_row_sums() {
        assert_close(
            convert_pixel([255; 3], ColorSpace::Xyz),
            [0.950_47, 1.0, 1.088_83],
            1e-5,
        );
    }

    #[test]
    fn conversion_keeps_dimensions() {
        let img = Image::from_fn(3, 2, |x, y| [x as u8 * 40, y as u8 * 90, 7]);
        let lab = convert_color_space(&img, ColorSpace::Lab);
        assert_eq!(lab.dims(), (3, 2));
        assert_eq!(lab.space(), ColorSpace::Lab);
        assert_eq!(lab.get(2, 1), convert_pixel([80, 90, 7], ColorSpace::Lab));
    }

    proptest! {
        #[test]
        fn lightness_stays_in_range(r: u8, g: u8, b: u8) {
            let [l, _, _] = convert_pixel([r, g, b], ColorSpace::Lab);
            prop_assert!((0.0..=100.0).contains(&l), "L = {l}");
        }

        #[test]
        fn xyz_is_nonnegative(r: u8, g: u8, b: u8) {
            let xyz = convert_pixel([r, g, b], ColorSpace::Xyz);
            prop_assert!(xyz.iter().all(|&c| c >= 0.0));
        }

        #[test]
        fn evaluation_order_is_irrelevant(pixels in proptest::collection::vec(any::<[u8; 3]>(), 1..64)) {
            let n = pixels.len();
            let forward = Image::new(n, 1, pixels.clone()).unwrap();
            let mut reversed = pixels.clone();
            reversed.reverse();
            let backward = Image::new(n, 1, reversed).unwrap();
            let a = convert_color_space(&forward, ColorSpace::Lab);
            let b = convert_color_space(&backward, ColorSpace::Lab);
            for i in 0..n {
                prop_assert_eq!(a.pixels()[i].map(f32::to_bits), b.pixels()[n - 1 - i].map(f32::to_bits));
            }
        }
    }
}
