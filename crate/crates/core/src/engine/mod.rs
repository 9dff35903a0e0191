//! Segmentation pipeline over interchangeable backends.
//!
//! The engine is layered: [`SegEngine`] owns the stage sequence, a backend
//! (sequential or parallel) schedules each stage, and the per-item math lives
//! in [`crate::slic`] and [`crate::connectivity`] where both backends share it.

mod backend;
mod parallel;
mod sequential;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use backend::Backend;
use parallel::Parallel;
use sequential::Sequential;

use crate::connectivity::{enforce_strict, ConnectivityMode};
use crate::error::{Error, Result};
use crate::imgproc::{Image, ImageRgb, ImageVec3};
use crate::slic::{
    center_shift_l1, compute_grid, AccumBuffer, GridSpec, LabelMap, Settings, SpixelInfo,
    SuperpixelMap,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendKind {
    Sequential,
    Parallel { workers: usize },
}

impl BackendKind {
    pub fn name(&self) -> &'static str {
        match self {
            BackendKind::Sequential => "seq",
            BackendKind::Parallel { .. } => "par",
        }
    }

    pub fn workers(&self) -> usize {
        match *self {
            BackendKind::Sequential => 1,
            BackendKind::Parallel { workers } => workers,
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BackendKind {
    type Err = Error;

    /// Parses `seq` or `par`; a parallel backend parsed this way uses one
    /// worker per available core.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seq" | "sequential" => Ok(BackendKind::Sequential),
            "par" | "parallel" => Ok(BackendKind::Parallel {
                workers: default_workers(),
            }),
            other => Err(Error::InvalidSettings(format!("unknown engine '{other}'"))),
        }
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Wall-clock seconds spent in each stage of one segmentation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StageTiming {
    pub convert: f64,
    pub init: f64,
    /// One entry per association pass.
    pub associate: Vec<f64>,
    /// One entry per center update.
    pub update: Vec<f64>,
    pub connectivity: f64,
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SegResult {
    pub labels: LabelMap,
    pub spixel_map: SuperpixelMap,
    pub timing: StageTiming,
}

struct EngineState {
    cvt: ImageVec3,
    map: SuperpixelMap,
    labels: LabelMap,
    scratch: LabelMap,
    accum: AccumBuffer,
}

pub struct SegEngine {
    settings: Settings,
    grid: GridSpec,
    kind: BackendKind,
    backend: Box<dyn Backend>,
    state: EngineState,
}

impl fmt::Debug for SegEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SegEngine")
            .field("settings", &self.settings)
            .field("grid", &self.grid)
            .field("backend", &self.backend)
            .finish_non_exhaustive()
    }
}

#[inline]
fn seconds_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

impl SegEngine {
    pub fn new(settings: Settings, kind: BackendKind) -> Result<Self> {
        let grid = compute_grid(&settings)?;
        let backend: Box<dyn Backend> = match kind {
            BackendKind::Sequential => Box::new(Sequential),
            BackendKind::Parallel { workers } => Box::new(Parallel::new(workers)?),
        };
        let (w, h) = (settings.width, settings.height);
        let placeholder = (0..grid.num_clusters())
            .map(|id| SpixelInfo {
                id: id as u32,
                xy: [0.0; 2],
                color: [0.0; 3],
                num_pixels: 0,
            })
            .collect();
        let state = EngineState {
            cvt: ImageVec3::zeroed(settings.color_space, w, h),
            map: SuperpixelMap::new(grid, placeholder),
            labels: Image::filled(w, h, 0),
            scratch: Image::filled(w, h, 0),
            accum: AccumBuffer::new(&grid, settings.tile_len),
        };
        Ok(Self {
            settings,
            grid,
            kind,
            backend,
            state,
        })
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn backend_kind(&self) -> BackendKind {
        self.kind
    }

    /// Converted image from the most recent call.
    pub fn converted(&self) -> &ImageVec3 {
        &self.state.cvt
    }

    /// Runs convert, init, associate, `iterations` x {update, associate} and
    /// the optional connectivity cleanup. All stage work has finished when
    /// this returns.
    pub fn perform_segmentation(&mut self, img: &ImageRgb) -> Result<SegResult> {
        let expected = (self.settings.width, self.settings.height);
        if img.dims() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: img.dims(),
            });
        }
        let settings = &self.settings;
        let backend = self.backend.as_ref();
        let st = &mut self.state;
        let spatial_weight = settings.compactness / self.grid.spixel_size() as f64;
        let mut timing = StageTiming::default();
        let start = Instant::now();

        let t = Instant::now();
        st.cvt.set_space(settings.color_space);
        backend.convert(img, &mut st.cvt);
        timing.convert = seconds_since(t);

        let t = Instant::now();
        backend.init_centers(&st.cvt, settings.perturb, &mut st.map);
        timing.init = seconds_since(t);

        let t = Instant::now();
        backend.associate(&st.cvt, &st.map, spatial_weight, &mut st.labels);
        timing.associate.push(seconds_since(t));

        for _ in 0..settings.iterations {
            let previous = settings.stop_threshold.map(|_| st.map.clone());

            let t = Instant::now();
            backend.update(
                &st.cvt,
                &st.labels,
                settings.tile_len,
                &mut st.accum,
                &mut st.map,
            );
            timing.update.push(seconds_since(t));

            let t = Instant::now();
            backend.associate(&st.cvt, &st.map, spatial_weight, &mut st.labels);
            timing.associate.push(seconds_since(t));

            if let (Some(threshold), Some(prev)) = (settings.stop_threshold, previous) {
                if center_shift_l1(&prev, &st.map)? < threshold {
                    break;
                }
            }
        }

        if settings.enforce_connectivity {
            let t = Instant::now();
            match settings
                .connectivity
                .strict_min_size(self.grid.spixel_size())
            {
                None => backend.enforce_weak(&mut st.labels, &mut st.scratch),
                Some(min_size) => st.labels = enforce_strict(&st.labels, min_size),
            }
            timing.connectivity = seconds_since(t);
        }
        timing.total = seconds_since(start);

        Ok(SegResult {
            labels: st.labels.clone(),
            spixel_map: st.map.clone(),
            timing,
        })
    }

    /// Segments frames in order, reusing internal buffers. The first frame
    /// with the wrong dimensions aborts the stream.
    pub fn segment_stream<'a, I>(&mut self, frames: I) -> Result<Vec<SegResult>>
    where
        I: IntoIterator<Item = &'a ImageRgb>,
    {
        let expected = (self.settings.width, self.settings.height);
        let mut out = Vec::new();
        for (frame, img) in frames.into_iter().enumerate() {
            if img.dims() != expected {
                return Err(Error::FrameDimensionMismatch {
                    frame,
                    expected,
                    actual: img.dims(),
                });
            }
            out.push(self.perform_segmentation(img)?);
        }
        Ok(out)
    }
}

/// Convenience wrapper: build an engine and segment a single image.
pub fn segment(img: &ImageRgb, settings: Settings, kind: BackendKind) -> Result<SegResult> {
    SegEngine::new(settings, kind)?.perform_segmentation(img)
}

impl ConnectivityMode {
    pub fn name(&self) -> &'static str {
        match self {
            ConnectivityMode::Weak => "weak",
            ConnectivityMode::Strict { .. } => "strict",
        }
    }
}
