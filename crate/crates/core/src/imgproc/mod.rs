//! Image containers, PPM I/O, color conversion and boundary overlays.

mod color;
mod overlay;
mod ppm;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use color::{convert_color_space, convert_pixel, srgb_to_linear};
pub use overlay::{boundary_mask, draw_boundaries};
pub use ppm::{decode_ppm, encode_ppm, load_image, save_image};

/// 8-bit sRGB triple.
pub type Rgb8 = [u8; 3];

/// Dense row-major raster.
#[derive(Clone, Debug, PartialEq)]
pub struct Image<P> {
    width: usize,
    height: usize,
    data: Vec<P>,
}

pub type ImageRgb = Image<Rgb8>;

impl<P: Copy> Image<P> {
    pub fn new(width: usize, height: usize, data: Vec<P>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidSettings(format!(
                "image dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        if data.len() != width * height {
            return Err(Error::InvalidSettings(format!(
                "pixel buffer holds {} entries, {width}x{height} image needs {}",
                data.len(),
                width * height
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// # Panics
    /// If either dimension is zero.
    pub fn filled(width: usize, height: usize, value: P) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be nonzero");
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    /// # Panics
    /// If either dimension is zero.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> P) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be nonzero");
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> P {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: P) {
        self.data[y * self.width + x] = value;
    }

    #[inline]
    pub fn pixels(&self) -> &[P] {
        &self.data
    }

    #[inline]
    pub fn pixels_mut(&mut self) -> &mut [P] {
        &mut self.data
    }

    pub fn into_pixels(self) -> Vec<P> {
        self.data
    }
}

/// Color space of a converted image.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ColorSpace {
    /// sRGB channels scaled to [0, 1].
    Rgb,
    /// CIE XYZ, D65, Y of white = 1.
    Xyz,
    /// CIELAB, D65 white, L in [0, 100].
    #[default]
    Lab,
}

impl fmt::Display for ColorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColorSpace::Rgb => "rgb",
            ColorSpace::Xyz => "xyz",
            ColorSpace::Lab => "lab",
        })
    }
}

impl FromStr for ColorSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rgb" => Ok(ColorSpace::Rgb),
            "xyz" => Ok(ColorSpace::Xyz),
            "lab" | "cielab" => Ok(ColorSpace::Lab),
            other => Err(Error::InvalidSettings(format!(
                "unknown color space '{other}'"
            ))),
        }
    }
}

/// Three-channel floating point image tagged with its color space.
#[derive(Clone, Debug, PartialEq)]
pub struct ImageVec3 {
    space: ColorSpace,
    raster: Image<[f32; 3]>,
}

impl ImageVec3 {
    pub fn new(space: ColorSpace, raster: Image<[f32; 3]>) -> Self {
        Self { space, raster }
    }

    pub(crate) fn zeroed(space: ColorSpace, width: usize, height: usize) -> Self {
        Self::new(space, Image::filled(width, height, [0.0; 3]))
    }

    #[inline]
    pub fn space(&self) -> ColorSpace {
        self.space
    }

    pub(crate) fn set_space(&mut self, space: ColorSpace) {
        self.space = space;
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.raster.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.raster.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        self.raster.dims()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> [f32; 3] {
        self.raster.get(x, y)
    }

    #[inline]
    pub fn pixels(&self) -> &[[f32; 3]] {
        self.raster.pixels()
    }

    #[inline]
    pub(crate) fn pixels_mut(&mut self) -> &mut [[f32; 3]] {
        self.raster.pixels_mut()
    }

    pub fn raster(&self) -> &Image<[f32; 3]> {
        &self.raster
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_mismatched_buffer() {
        assert!(Image::new(2, 2, vec![[0u8; 3]; 3]).is_err());
        assert!(Image::<[u8; 3]>::new(0, 2, vec![]).is_err());
        assert!(Image::new(2, 2, vec![[0u8; 3]; 4]).is_ok());
    }

    #[test]
    fn from_fn_is_row_major() {
        let img = Image::from_fn(3, 2, |x, y| (x + 10 * y) as u32);
        assert_eq!(img.pixels(), &[0, 1, 2, 10, 11, 12]);
        assert_eq!(img.get(2, 1), 12);
    }

    #[test]
    fn color_space_parsing() {
        assert_eq!("LAB".parse::<ColorSpace>().unwrap(), ColorSpace::Lab);
        assert_eq!("xyz".parse::<ColorSpace>().unwrap(), ColorSpace::Xyz);
        assert!("hsv".parse::<ColorSpace>().is_err());
    }
}
