use super::grid::GridSpec;
use crate::error::{Error, Result};
use crate::imgproc::ImageVec3;

/// One cluster record: 5D center plus population.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpixelInfo {
    pub id: u32,
    /// Spatial center. Pixel (x, y) sits at (x + 0.5, y + 0.5).
    pub xy: [f64; 2],
    pub color: [f64; 3],
    pub num_pixels: usize,
}

/// Dense rows x cols grid of cluster records, indexed row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperpixelMap {
    grid: GridSpec,
    records: Vec<SpixelInfo>,
}

impl SuperpixelMap {
    /// # Panics
    /// If `records` does not hold one entry per grid cell with matching ids.
    pub fn new(grid: GridSpec, records: Vec<SpixelInfo>) -> Self {
        assert_eq!(
            records.len(),
            grid.num_clusters(),
            "record count must match grid"
        );
        assert!(
            records.iter().enumerate().all(|(i, r)| r.id as usize == i),
            "record ids must equal their positions"
        );
        Self { grid, records }
    }

    #[inline]
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    #[inline]
    pub fn records(&self) -> &[SpixelInfo] {
        &self.records
    }

    #[inline]
    pub(crate) fn records_mut(&mut self) -> &mut [SpixelInfo] {
        &mut self.records
    }

    #[inline]
    pub fn get(&self, id: usize) -> &SpixelInfo {
        &self.records[id]
    }

    pub fn total_pixels(&self) -> usize {
        self.records.iter().map(|r| r.num_pixels).sum()
    }
}

/// Spatial coordinate of a pixel index.
#[inline]
pub fn pixel_coord(i: usize) -> f64 {
    i as f64 + 0.5
}

#[inline]
fn color_at(img: &ImageVec3, x: usize, y: usize) -> [f64; 3] {
    img.get(x, y).map(f64::from)
}

/// Seeds cluster `id` at the middle of its grid cell, clamped into the image.
pub fn init_center(img: &ImageVec3, grid: &GridSpec, id: usize) -> SpixelInfo {
    let (r, c) = grid.cell_of(id);
    let s = grid.spixel_size() as f64;
    let (w, h) = grid.image_dims();
    let x = (c as f64 * s + s / 2.0).min((w - 1) as f64);
    let y = (r as f64 * s + s / 2.0).min((h - 1) as f64);
    SpixelInfo {
        id: id as u32,
        xy: [x, y],
        color: color_at(img, x as usize, y as usize),
        num_pixels: 0,
    }
}

pub fn init_cluster_centers(img: &ImageVec3, grid: &GridSpec) -> SuperpixelMap {
    assert_eq!(img.dims(), grid.image_dims(), "image does not match grid");
    let records = (0..grid.num_clusters())
        .map(|id| init_center(img, grid, id))
        .collect();
    SuperpixelMap::new(*grid, records)
}

/// Squared central-difference gradient magnitude; coordinates are clamped at
/// the image border.
pub fn gradient_magnitude(img: &ImageVec3, x: usize, y: usize) -> f64 {
    let (w, h) = img.dims();
    let sq =
        |a: [f64; 3], b: [f64; 3]| -> f64 { (0..3).map(|i| (a[i] - b[i]) * (a[i] - b[i])).sum() };
    let horizontal = sq(
        color_at(img, (x + 1).min(w - 1), y),
        color_at(img, x.saturating_sub(1), y),
    );
    let vertical = sq(
        color_at(img, x, (y + 1).min(h - 1)),
        color_at(img, x, y.saturating_sub(1)),
    );
    horizontal + vertical
}

/// Moves a center to the lowest-gradient pixel of its 3x3 neighborhood.
///
/// The center stays put when it lies on the image border or when its own
/// gradient already equals the neighborhood minimum; otherwise the first
/// minimum in scan order wins.
pub fn perturb_center(img: &ImageVec3, info: &SpixelInfo) -> SpixelInfo {
    let (w, h) = img.dims();
    let px = info.xy[0] as usize;
    let py = info.xy[1] as usize;
    if px == 0 || py == 0 || px + 1 >= w || py + 1 >= h {
        return *info;
    }
    let own = gradient_magnitude(img, px, py);
    let mut best = (own, 0isize, 0isize);
    let mut first = true;
    for dy in -1isize..=1 {
        for dx in -1isize..=1 {
            let g = gradient_magnitude(img, px.wrapping_add_signed(dx), py.wrapping_add_signed(dy));
            if first || g < best.0 {
                best = (g, dx, dy);
                first = false;
            }
        }
    }
    if own <= best.0 {
        return *info;
    }
    let (_, dx, dy) = best;
    let nx = px.wrapping_add_signed(dx);
    let ny = py.wrapping_add_signed(dy);
    SpixelInfo {
        xy: [info.xy[0] + dx as f64, info.xy[1] + dy as f64],
        color: color_at(img, nx, ny),
        ..*info
    }
}

pub fn perturb_centers(img: &ImageVec3, map: &SuperpixelMap) -> SuperpixelMap {
    let records = map
        .records()
        .iter()
        .map(|r| perturb_center(img, r))
        .collect();
    SuperpixelMap::new(*map.grid(), records)
}

/// Summed L1 displacement of all spatial centers between two maps.
pub fn center_shift_l1(old: &SuperpixelMap, new: &SuperpixelMap) -> Result<f64> {
    if old.grid() != new.grid() {
        return Err(Error::GridMismatch);
    }
    Ok(old
        .records()
        .iter()
        .zip(new.records())
        .map(|(a, b)| (a.xy[0] - b.xy[0]).abs() + (a.xy[1] - b.xy[1]).abs())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imgproc::{ColorSpace, Image};
    use proptest::prelude::*;

    fn flat(w: usize, h: usize, v: f32) -> ImageVec3 {
        ImageVec3::new(ColorSpace::Lab, Image::filled(w, h, [v, 0.0, 0.0]))
    }

    #[test]
    fn single_cell() {
        let map = init_cluster_centers(&flat(10, 10, 1.0), &GridSpec::new(10, 10, 10));
        assert_eq!(map.records().len(), 1);
        assert_eq!(map.get(0).xy, [5.0, 5.0]);
        assert_eq!(map.get(0).num_pixels, 0);
    }

    #[test]
    fn two_cells() {
        let map = init_cluster_centers(&flat(20, 10, 1.0), &GridSpec::new(20, 10, 10));
        let xy: Vec<_> = map.records().iter().map(|r| r.xy).collect();
        assert_eq!(xy, vec![[5.0, 5.0], [15.0, 5.0]]);
    }

    #[test]
    fn ragged_cell_is_clamped() {
        let img = ImageVec3::new(
            ColorSpace::Lab,
            Image::from_fn(15, 10, |x, y| [x as f32, y as f32, 0.0]),
        );
        let map = init_cluster_centers(&img, &GridSpec::new(15, 10, 10));
        assert_eq!(map.records().len(), 2);
        assert_eq!(map.get(1).xy, [14.0, 5.0]);
        assert_eq!(map.get(1).color, [14.0, 5.0, 0.0]);
    }

    #[test]
    fn perturbation_fixes_flat_image() {
        let img = flat(30, 30, 42.0);
        let grid = GridSpec::new(30, 30, 10);
        let map = init_cluster_centers(&img, &grid);
        assert_eq!(perturb_centers(&img, &map), map);
    }

    // Brute-force gradient straight from the definition, independent of the
    // clamped implementation (only used on interior pixels).
    fn oracle_gradient(v: &[[f64; 5]; 5], x: usize, y: usize) -> f64 {
        let d = |a: f64, b: f64| (a - b) * (a - b);
        d(v[y][x + 1], v[y][x - 1]) + d(v[y + 1][x], v[y - 1][x])
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn perturbation_steps_away_from_edge() {
        // Flat L=0 in columns 0..=2, L=100 in columns 3..=4; the seed sits at
        // pixel (2, 2), right next to the step.
        let mut l = [[0.0f64; 5]; 5];
        for row in l.iter_mut() {
            row[3] = 100.0;
            row[4] = 100.0;
        }
        let img = ImageVec3::new(
            ColorSpace::Lab,
            Image::from_fn(5, 5, |x, y| [l[y][x] as f32, 0.0, 0.0]),
        );
        let mut grads = [[0.0; 3]; 3];
        for dy in 0..3 {
            for dx in 0..3 {
                grads[dy][dx] = oracle_gradient(&l, 1 + dx, 1 + dy);
                assert_eq!(grads[dy][dx], gradient_magnitude(&img, 1 + dx, 1 + dy));
            }
        }
        assert_eq!(grads, [[0.0, 10000.0, 10000.0]; 3]);

        let seed = SpixelInfo {
            id: 0,
            xy: [2.5, 2.5],
            color: [0.0; 3],
            num_pixels: 0,
        };
        let moved = perturb_center(&img, &seed);
        // First scan-order minimum is pixel (1, 1).
        assert_eq!(moved.xy, [1.5, 1.5]);
        assert_eq!(moved.color, [0.0; 3]);
    }

    #[test]
    fn border_centers_stay() {
        let img = ImageVec3::new(
            ColorSpace::Lab,
            Image::from_fn(5, 5, |x, y| [(x * y) as f32, 0.0, 0.0]),
        );
        let seed = SpixelInfo {
            id: 0,
            xy: [0.0, 0.0],
            color: [0.0; 3],
            num_pixels: 0,
        };
        assert_eq!(perturb_center(&img, &seed), seed);
    }

    #[test]
    fn l1_shift() {
        let img = flat(30, 30, 1.0);
        let map = init_cluster_centers(&img, &GridSpec::new(30, 30, 10));
        assert_eq!(center_shift_l1(&map, &map).unwrap(), 0.0);
        let mut moved = map.clone();
        moved.records_mut()[4].xy[0] += 1.0;
        moved.records_mut()[4].xy[1] -= 2.0;
        assert_eq!(center_shift_l1(&map, &moved).unwrap(), 3.0);
        let other = init_cluster_centers(&img, &GridSpec::new(30, 30, 15));
        assert!(matches!(
            center_shift_l1(&map, &other),
            Err(Error::GridMismatch)
        ));
    }

    proptest! {
        #[test]
        fn l1_matches_direct_loop(shifts in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 9)) {
            let img = flat(30, 30, 1.0);
            let a = init_cluster_centers(&img, &GridSpec::new(30, 30, 10));
            let mut b = a.clone();
            for (r, (dx, dy)) in b.records_mut().iter_mut().zip(&shifts) {
                r.xy[0] += dx;
                r.xy[1] += dy;
            }
            let mut want = 0.0;
            for i in 0..9 {
                want += (a.get(i).xy[0] - b.get(i).xy[0]).abs();
                want += (a.get(i).xy[1] - b.get(i).xy[1]).abs();
            }
            let got = center_shift_l1(&a, &b).unwrap();
            prop_assert!((got - want).abs() <= 1e-12 * want.max(1.0));
        }
    }
}
