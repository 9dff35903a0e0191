use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use superpix::imgproc::encode_ppm;
use superpix::{
    draw_boundaries, load_image, BackendKind, ImageRgb, SegEngine, SegResult, SuperpixelSize,
};

use crate::config::{CliConfig, FormatArg};
use crate::error::CliError;
use crate::output::{write_labels, LabelFormat};

pub const OVERLAY_COLOR: [u8; 3] = [255, 0, 0];

fn load_all(paths: &[PathBuf]) -> Result<Vec<ImageRgb>, CliError> {
    paths
        .iter()
        .map(|p| {
            load_image(p).map_err(|source| CliError::Input {
                path: p.clone(),
                source,
            })
        })
        .collect()
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".into())
}

fn run_once(
    cfg: &CliConfig,
    path: &Path,
    img: &ImageRgb,
    size: SuperpixelSize,
    kind: BackendKind,
) -> Result<(SegEngine, SegResult), CliError> {
    let settings = cfg.settings(img.width(), img.height(), size);
    let wrap = |source| CliError::Segment {
        path: path.to_owned(),
        source,
    };
    let mut engine = SegEngine::new(settings, kind).map_err(wrap)?;
    let result = engine.perform_segmentation(img).map_err(wrap)?;
    Ok((engine, result))
}

/// Output files written for one input, in format order.
pub fn output_paths(out_dir: &Path, input: &Path, formats: &[FormatArg]) -> Vec<PathBuf> {
    let stem = stem(input);
    formats
        .iter()
        .map(|f| {
            out_dir.join(match f {
                FormatArg::Csv => format!("{stem}.labels.csv"),
                FormatArg::Pgm => format!("{stem}.labels.pgm"),
                FormatArg::Overlay => format!("{stem}.overlay.ppm"),
            })
        })
        .collect()
}

/// Segments every input and writes the selected outputs. All inputs are
/// loaded before anything is written.
pub fn run_segment(cfg: &CliConfig) -> Result<Vec<PathBuf>, CliError> {
    let images = load_all(&cfg.inputs)?;
    let out_dir = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    let (&size, &kind) = match (cfg.sizes.as_slice(), cfg.engines.as_slice()) {
        ([size], [kind]) => (size, kind),
        _ => {
            return Err(CliError::Settings(
                "segment mode takes exactly one superpixel size and one engine".into(),
            ))
        }
    };
    fs::create_dir_all(&out_dir).map_err(|source| CliError::Output {
        path: out_dir.clone(),
        source,
    })?;

    let mut written = Vec::new();
    for (path, img) in cfg.inputs.iter().zip(&images) {
        let (_, result) = run_once(cfg, path, img, size, kind)?;
        for (format, target) in cfg
            .formats
            .iter()
            .zip(output_paths(&out_dir, path, &cfg.formats))
        {
            match format {
                FormatArg::Csv => write_labels(&result.labels, &target, LabelFormat::Csv)?,
                FormatArg::Pgm => write_labels(&result.labels, &target, LabelFormat::Pgm)?,
                FormatArg::Overlay => {
                    let overlay =
                        draw_boundaries(img, &result.labels, OVERLAY_COLOR).map_err(|source| {
                            CliError::Segment {
                                path: path.clone(),
                                source,
                            }
                        })?;
                    fs::write(&target, encode_ppm(&overlay)).map_err(|source| {
                        CliError::Output {
                            path: target.clone(),
                            source,
                        }
                    })?;
                }
            }
            written.push(target);
        }
    }
    Ok(written)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub image: String,
    pub width: usize,
    pub height: usize,
    pub engine: BackendKind,
    /// Requested superpixel count, or the grid's cell count when a side
    /// length was given.
    pub superpixels: usize,
    pub mean_s: f64,
    pub stddev_s: f64,
    /// Sequential mean over this row's mean; only on parallel rows whose
    /// image and size also ran sequentially.
    pub speedup: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

pub const BENCH_HEADER: &str = "image,size,engine,workers,superpixels,mean_s,stddev_s,speedup";

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(BENCH_HEADER);
        out.push('\n');
        for r in &self.rows {
            let speedup = r.speedup.map(|s| format!("{s:.3}")).unwrap_or_default();
            writeln!(
                out,
                "{},{}x{},{},{},{},{:.6},{:.6},{}",
                r.image,
                r.width,
                r.height,
                r.engine.name(),
                r.engine.workers(),
                r.superpixels,
                r.mean_s,
                r.stddev_s,
                speedup
            )
            .expect("write to String");
        }
        out
    }

    fn fill_speedups(&mut self) {
        let seq: Vec<(String, usize, f64)> = self
            .rows
            .iter()
            .filter(|r| r.engine == BackendKind::Sequential)
            .map(|r| (r.image.clone(), r.superpixels, r.mean_s))
            .collect();
        for row in &mut self.rows {
            if row.engine == BackendKind::Sequential {
                continue;
            }
            row.speedup = seq
                .iter()
                .find(|(img, k, _)| *img == row.image && *k == row.superpixels)
                .filter(|_| row.mean_s > 0.0)
                .map(|(_, _, m)| m / row.mean_s);
        }
    }
}

/// Mean and sample standard deviation.
pub fn mean_stddev(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// One untimed warm-up plus `repeats` timed runs per image x size x engine.
/// Runs are strictly serialized.
pub fn run_bench(cfg: &CliConfig) -> Result<BenchReport, CliError> {
    if cfg.repeats < 3 {
        eprintln!(
            "superpix: warning: --repeats {} gives a noisy standard deviation; 3 or more is recommended",
            cfg.repeats
        );
    }
    let images = load_all(&cfg.inputs)?;
    let mut report = BenchReport::default();
    for (path, img) in cfg.inputs.iter().zip(&images) {
        for &size in &cfg.sizes {
            for &kind in &cfg.engines {
                let (mut engine, _) = run_once(cfg, path, img, size, kind)?;
                let mut samples = Vec::with_capacity(cfg.repeats);
                for _ in 0..cfg.repeats {
                    let r =
                        engine
                            .perform_segmentation(img)
                            .map_err(|source| CliError::Segment {
                                path: path.clone(),
                                source,
                            })?;
                    samples.push(r.timing.total);
                }
                let (mean_s, stddev_s) = mean_stddev(&samples);
                report.rows.push(BenchRow {
                    image: stem(path),
                    width: img.width(),
                    height: img.height(),
                    engine: kind,
                    superpixels: match size {
                        SuperpixelSize::Count(k) => k,
                        SuperpixelSize::Side(_) => engine.grid().num_clusters(),
                    },
                    mean_s,
                    stddev_s,
                    speedup: None,
                });
            }
        }
    }
    report.fill_speedups();
    if let Some(dir) = &cfg.out_dir {
        fs::create_dir_all(dir).map_err(|source| CliError::Output {
            path: dir.clone(),
            source,
        })?;
        let path = dir.join("bench.csv");
        fs::write(&path, report.to_csv()).map_err(|source| CliError::Output { path, source })?;
    }
    Ok(report)
}
