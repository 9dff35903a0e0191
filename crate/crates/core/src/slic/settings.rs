use crate::connectivity::ConnectivityMode;
use crate::error::{Error, Result};
use crate::imgproc::ColorSpace;

pub const DEFAULT_COMPACTNESS: f64 = 10.0;
pub const DEFAULT_ITERATIONS: usize = 5;
/// Strip length used to tile each cluster's search window during the update.
pub const DEFAULT_TILE_LEN: usize = 16;

/// How the grid interval is chosen: from a target superpixel count, or directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuperpixelSize {
    Count(usize),
    Side(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub width: usize,
    pub height: usize,
    pub size: SuperpixelSize,
    /// Weight of spatial distance against color distance (m).
    pub compactness: f64,
    pub iterations: usize,
    pub color_space: ColorSpace,
    pub enforce_connectivity: bool,
    pub connectivity: ConnectivityMode,
    pub perturb: bool,
    pub tile_len: usize,
    /// Stop early once the summed L1 center displacement drops below this.
    pub stop_threshold: Option<f64>,
}

impl Settings {
    pub fn with_superpixels(width: usize, height: usize, count: usize) -> Self {
        Self::new(width, height, SuperpixelSize::Count(count))
    }

    pub fn with_spixel_size(width: usize, height: usize, side: usize) -> Self {
        Self::new(width, height, SuperpixelSize::Side(side))
    }

    pub fn new(width: usize, height: usize, size: SuperpixelSize) -> Self {
        Self {
            width,
            height,
            size,
            compactness: DEFAULT_COMPACTNESS,
            iterations: DEFAULT_ITERATIONS,
            color_space: ColorSpace::Lab,
            enforce_connectivity: true,
            connectivity: ConnectivityMode::Weak,
            perturb: false,
            tile_len: DEFAULT_TILE_LEN,
            stop_threshold: None,
        }
    }

    pub fn num_pixels(&self) -> usize {
        self.width * self.height
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidSettings(msg));
        if self.width == 0 || self.height == 0 {
            return invalid(format!(
                "image dimensions must be at least 1x1, got {}x{}",
                self.width, self.height
            ));
        }
        match self.size {
            SuperpixelSize::Count(0) => {
                return invalid("superpixel count must be at least 1".into())
            }
            SuperpixelSize::Count(k) if k > self.num_pixels() => {
                return invalid(format!(
                    "{k} superpixels requested for an image of only {} pixels",
                    self.num_pixels()
                ))
            }
            SuperpixelSize::Side(0) => return invalid("superpixel size must be at least 1".into()),
            _ => {}
        }
        if !(self.compactness.is_finite() && self.compactness > 0.0) {
            return invalid(format!(
                "compactness must be positive, got {}",
                self.compactness
            ));
        }
        if self.iterations == 0 {
            return invalid("iteration count must be at least 1".into());
        }
        if self.tile_len == 0 {
            return invalid("tile length must be at least 1".into());
        }
        if let ConnectivityMode::Strict { min_size: Some(0) } = self.connectivity {
            return invalid("strict connectivity min size must be at least 1".into());
        }
        if let Some(t) = self.stop_threshold {
            if !(t.is_finite() && t >= 0.0) {
                return invalid(format!("stop threshold must be nonnegative, got {t}"));
            }
        }
        Ok(())
    }
}
