//! Center update: windowed strip accumulation followed by a fixed-order
//! pairwise reduction over the strip axis.

use std::ops::AddAssign;

use super::assoc::{pixel_point, Point5};
use super::centers::{SpixelInfo, SuperpixelMap};
use super::grid::GridSpec;
use super::LabelMap;
use crate::imgproc::ImageVec3;

/// Partial sums (l, a, b, x, y) and member count for one strip.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ClusterSums {
    pub sum: Point5,
    pub count: u64,
}

impl ClusterSums {
    #[inline]
    pub fn add_point(&mut self, p: &Point5) {
        for (s, v) in self.sum.iter_mut().zip(p) {
            *s += v;
        }
        self.count += 1;
    }
}

impl AddAssign<&ClusterSums> for ClusterSums {
    #[inline]
    fn add_assign(&mut self, rhs: &ClusterSums) {
        for (s, v) in self.sum.iter_mut().zip(&rhs.sum) {
            *s += v;
        }
        self.count += rhs.count;
    }
}

/// rows x cols x strips slab of partial sums, cluster-major.
#[derive(Clone, Debug, PartialEq)]
pub struct AccumBuffer {
    rows: usize,
    cols: usize,
    strips: usize,
    slab: Vec<ClusterSums>,
}

impl AccumBuffer {
    pub fn new(grid: &GridSpec, tile_len: usize) -> Self {
        let strips = grid.strips(tile_len);
        Self {
            rows: grid.rows(),
            cols: grid.cols(),
            strips,
            slab: vec![ClusterSums::default(); grid.num_clusters() * strips],
        }
    }

    #[inline]
    pub fn strips(&self) -> usize {
        self.strips
    }

    #[inline]
    pub fn num_clusters(&self) -> usize {
        self.rows * self.cols
    }

    /// All strips of one cluster.
    #[inline]
    pub fn cluster(&self, id: usize) -> &[ClusterSums] {
        &self.slab[id * self.strips..(id + 1) * self.strips]
    }

    #[inline]
    pub fn slab(&self) -> &[ClusterSums] {
        &self.slab
    }

    #[inline]
    pub(crate) fn slab_mut(&mut self) -> &mut [ClusterSums] {
        &mut self.slab
    }

    pub fn matches(&self, grid: &GridSpec) -> bool {
        self.rows == grid.rows() && self.cols == grid.cols()
    }
}

/// Fills `strips` for cluster `id` from the pixels of its search window that
/// carry its label. Strip `j` covers window rows `[j * tile_len, (j + 1) * tile_len)`.
pub fn accumulate_cluster(
    img: &ImageVec3,
    labels: &LabelMap,
    grid: &GridSpec,
    tile_len: usize,
    id: usize,
    strips: &mut [ClusterSums],
) {
    let (x0, x1, y0, y1) = grid.search_window(id);
    let w = labels.width();
    let lbl = labels.pixels();
    let target = id as u32;
    for (j, strip) in strips.iter_mut().enumerate() {
        *strip = ClusterSums::default();
        let top = y0 + j * tile_len;
        let bottom = (top + tile_len).min(y1);
        for y in top..bottom {
            let row = &lbl[y * w + x0..y * w + x1];
            for (x, &l) in (x0..x1).zip(row) {
                if l == target {
                    strip.add_point(&pixel_point(img, x, y));
                }
            }
        }
    }
}

/// Adds pixels lying outside their own cluster's search window to strip 0 of
/// that cluster, in scan order.
pub fn spill_pass(img: &ImageVec3, labels: &LabelMap, grid: &GridSpec, buf: &mut AccumBuffer) {
    let w = labels.width();
    let strips = buf.strips;
    for (i, &label) in labels.pixels().iter().enumerate() {
        let (x, y) = (i % w, i / w);
        let id = label as usize;
        if !grid.in_window(id, x, y) {
            buf.slab[id * strips].add_point(&pixel_point(img, x, y));
        }
    }
}

pub fn accumulate_cluster_stats(
    img: &ImageVec3,
    labels: &LabelMap,
    grid: &GridSpec,
    tile_len: usize,
) -> AccumBuffer {
    let mut buf = AccumBuffer::new(grid, tile_len);
    accumulate_into(img, labels, grid, tile_len, &mut buf);
    buf
}

pub(crate) fn accumulate_into(
    img: &ImageVec3,
    labels: &LabelMap,
    grid: &GridSpec,
    tile_len: usize,
    buf: &mut AccumBuffer,
) {
    check_labels(labels, grid);
    let strips = buf.strips;
    for (id, chunk) in buf.slab.chunks_exact_mut(strips).enumerate() {
        accumulate_cluster(img, labels, grid, tile_len, id, chunk);
    }
    spill_pass(img, labels, grid, buf);
}

pub(crate) fn check_labels(labels: &LabelMap, grid: &GridSpec) {
    assert_eq!(
        labels.dims(),
        grid.image_dims(),
        "label map does not match grid"
    );
    let n = grid.num_clusters() as u32;
    assert!(
        labels.pixels().iter().all(|&l| l < n),
        "label out of range for a grid of {n} clusters"
    );
}

/// Sums a run of partials in a fixed pairwise tree over the strip index.
pub fn tree_sum(parts: &[ClusterSums]) -> ClusterSums {
    match parts.len() {
        0 => ClusterSums::default(),
        1 => parts[0],
        n => {
            let mid = n.next_power_of_two() / 2;
            let mut left = tree_sum(&parts[..mid]);
            left += &tree_sum(&parts[mid..]);
            left
        }
    }
}

/// New record for one cluster; empty clusters keep their previous center.
pub fn reduce_cluster(parts: &[ClusterSums], prev: &SpixelInfo) -> SpixelInfo {
    let total = tree_sum(parts);
    if total.count == 0 {
        return SpixelInfo {
            num_pixels: 0,
            ..*prev
        };
    }
    let n = total.count as f64;
    let s = total.sum;
    SpixelInfo {
        id: prev.id,
        color: [s[0] / n, s[1] / n, s[2] / n],
        xy: [s[3] / n, s[4] / n],
        num_pixels: total.count as usize,
    }
}

pub fn reduce_cluster_stats(buf: &AccumBuffer, prev: &SuperpixelMap) -> SuperpixelMap {
    let mut next = prev.clone();
    reduce_into(buf, &mut next);
    next
}

pub(crate) fn reduce_into(buf: &AccumBuffer, map: &mut SuperpixelMap) {
    assert!(
        buf.matches(map.grid()),
        "accumulation buffer does not match grid"
    );
    let strips = buf.strips;
    for (rec, parts) in map
        .records_mut()
        .iter_mut()
        .zip(buf.slab.chunks_exact(strips))
    {
        *rec = reduce_cluster(parts, rec);
    }
}
