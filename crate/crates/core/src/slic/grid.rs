use super::settings::{Settings, SuperpixelSize};
use crate::error::Result;

/// Seed grid: interval `S` and the number of superpixel rows and columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    spixel_size: usize,
    rows: usize,
    cols: usize,
    width: usize,
    height: usize,
}

impl GridSpec {
    /// # Panics
    /// If any argument is zero.
    pub fn new(width: usize, height: usize, spixel_size: usize) -> Self {
        assert!(width > 0 && height > 0 && spixel_size > 0);
        Self {
            spixel_size,
            rows: height.div_ceil(spixel_size),
            cols: width.div_ceil(spixel_size),
            width,
            height,
        }
    }

    /// Grid interval `S` in pixels.
    #[inline]
    pub fn spixel_size(&self) -> usize {
        self.spixel_size
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn num_clusters(&self) -> usize {
        self.rows * self.cols
    }

    #[inline]
    pub fn image_dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    /// (row, col) of the grid cell containing pixel (x, y).
    #[inline]
    pub fn home_cell(&self, x: usize, y: usize) -> (usize, usize) {
        (y / self.spixel_size, x / self.spixel_size)
    }

    #[inline]
    pub fn cell_of(&self, id: usize) -> (usize, usize) {
        (id / self.cols, id % self.cols)
    }

    /// Inclusive row and column ranges of the 3x3 cell block around a cell,
    /// clipped to the grid.
    #[inline]
    pub fn neighborhood(&self, row: usize, col: usize) -> ((usize, usize), (usize, usize)) {
        (
            (row.saturating_sub(1), (row + 1).min(self.rows - 1)),
            (col.saturating_sub(1), (col + 1).min(self.cols - 1)),
        )
    }

    /// Half-open pixel rectangle `(x0, x1, y0, y1)` covering the 3S x 3S
    /// block centered on cluster `id`'s cell, clipped to the image.
    pub fn search_window(&self, id: usize) -> (usize, usize, usize, usize) {
        let (r, c) = self.cell_of(id);
        let s = self.spixel_size;
        (
            c.saturating_sub(1) * s,
            ((c + 2) * s).min(self.width),
            r.saturating_sub(1) * s,
            ((r + 2) * s).min(self.height),
        )
    }

    /// Whether pixel (x, y) lies inside cluster `id`'s search window.
    #[inline]
    pub fn in_window(&self, id: usize, x: usize, y: usize) -> bool {
        let (r, c) = self.cell_of(id);
        let (hr, hc) = self.home_cell(x, y);
        hr.abs_diff(r) <= 1 && hc.abs_diff(c) <= 1
    }

    /// Number of strips a search window is split into for a given tile length.
    #[inline]
    pub fn strips(&self, tile_len: usize) -> usize {
        (self.spixel_size * 3).div_ceil(tile_len).max(1)
    }
}

/// Derives the seed grid from the settings.
pub fn compute_grid(settings: &Settings) -> Result<GridSpec> {
    settings.validate()?;
    let side = match settings.size {
        SuperpixelSize::Side(s) => s,
        SuperpixelSize::Count(k) => {
            let area = settings.num_pixels() as f64 / k as f64;
            (area.sqrt().round() as usize).max(1)
        }
    };
    Ok(GridSpec::new(settings.width, settings.height, side))
}
