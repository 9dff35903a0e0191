use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use super::backend::Backend;
use crate::connectivity::weak_pass_rows;
use crate::error::{Error, Result};
use crate::imgproc::{convert_pixel, ImageRgb, ImageVec3};
use crate::slic::{
    accumulate_cluster, associate_rows, check_labels, init_center, perturb_center, reduce_cluster,
    spill_pass, AccumBuffer, LabelMap, SuperpixelMap,
};

/// Data-parallel backend. Per-pixel stages are split into `workers`
/// contiguous row bands and per-cluster stages into `workers` contiguous
/// cluster-index ranges; the partition depends only on sizes and the worker
/// count, so results match the sequential backend bit for bit.
pub(crate) struct Parallel {
    workers: usize,
    pool: ThreadPool,
}

impl std::fmt::Debug for Parallel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Parallel")
            .field("workers", &self.workers)
            .finish()
    }
}

impl Parallel {
    pub(crate) fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::InvalidSettings(
                "worker count must be at least 1".into(),
            ));
        }
        let pool = ThreadPoolBuilder::new()
            .num_threads(workers)
            .thread_name(|i| format!("superpix-{i}"))
            .build()
            .map_err(|e| Error::InvalidSettings(format!("cannot start worker pool: {e}")))?;
        Ok(Self { workers, pool })
    }

    /// Rows per band for an image of `height` rows.
    fn band_rows(&self, height: usize) -> usize {
        height.div_ceil(self.workers).max(1)
    }

    /// Clusters per range for `n` clusters.
    fn cluster_span(&self, n: usize) -> usize {
        n.div_ceil(self.workers).max(1)
    }
}

impl Backend for Parallel {
    fn convert(&self, src: &ImageRgb, dst: &mut ImageVec3) {
        let space = dst.space();
        let band = self.band_rows(src.height()) * src.width();
        self.pool.install(|| {
            dst.pixels_mut()
                .par_chunks_mut(band)
                .zip(src.pixels().par_chunks(band))
                .for_each(|(d, s)| {
                    for (d, &s) in d.iter_mut().zip(s) {
                        *d = convert_pixel(s, space);
                    }
                });
        });
    }

    fn init_centers(&self, img: &ImageVec3, perturb: bool, map: &mut SuperpixelMap) {
        let grid = *map.grid();
        let span = self.cluster_span(grid.num_clusters());
        self.pool.install(|| {
            map.records_mut()
                .par_chunks_mut(span)
                .enumerate()
                .for_each(|(k, recs)| {
                    for (j, rec) in recs.iter_mut().enumerate() {
                        *rec = init_center(img, &grid, k * span + j);
                        if perturb {
                            *rec = perturb_center(img, rec);
                        }
                    }
                });
        });
    }

    fn associate(
        &self,
        img: &ImageVec3,
        map: &SuperpixelMap,
        spatial_weight: f64,
        labels: &mut LabelMap,
    ) {
        let w = img.width();
        let rows = self.band_rows(img.height());
        self.pool.install(|| {
            labels
                .pixels_mut()
                .par_chunks_mut(rows * w)
                .enumerate()
                .for_each(|(k, band)| associate_rows(img, map, spatial_weight, k * rows, band));
        });
    }

    fn update(
        &self,
        img: &ImageVec3,
        labels: &LabelMap,
        tile_len: usize,
        accum: &mut AccumBuffer,
        map: &mut SuperpixelMap,
    ) {
        let grid = *map.grid();
        check_labels(labels, &grid);
        let strips = accum.strips();
        let span = self.cluster_span(grid.num_clusters());
        self.pool.install(|| {
            accum
                .slab_mut()
                .par_chunks_mut(span * strips)
                .enumerate()
                .for_each(|(k, range)| {
                    for (j, parts) in range.chunks_exact_mut(strips).enumerate() {
                        accumulate_cluster(img, labels, &grid, tile_len, k * span + j, parts);
                    }
                });
        });
        spill_pass(img, labels, &grid, accum);
        let slab = accum.slab();
        self.pool.install(|| {
            map.records_mut()
                .par_chunks_mut(span)
                .zip(slab.par_chunks(span * strips))
                .for_each(|(recs, range)| {
                    for (rec, parts) in recs.iter_mut().zip(range.chunks_exact(strips)) {
                        *rec = reduce_cluster(parts, rec);
                    }
                });
        });
    }

    fn enforce_weak(&self, labels: &mut LabelMap, scratch: &mut LabelMap) {
        let (w, h) = labels.dims();
        let rows = self.band_rows(h);
        for _ in 0..2 {
            let src = labels.pixels();
            self.pool.install(|| {
                scratch
                    .pixels_mut()
                    .par_chunks_mut(rows * w)
                    .enumerate()
                    .for_each(|(k, band)| weak_pass_rows(src, w, h, k * rows, band));
            });
            std::mem::swap(labels, scratch);
        }
    }
}
