//! Command-line flags and the validated run configuration.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use superpix::slic::{DEFAULT_COMPACTNESS, DEFAULT_ITERATIONS, DEFAULT_TILE_LEN};
use superpix::{
    default_workers, BackendKind, ColorSpace, ConnectivityMode, Settings, SuperpixelSize,
};

use crate::error::CliError;

/// Superpixel side length used when neither --superpixels nor --spixel-size is given.
pub const DEFAULT_SPIXEL_SIZE: usize = 16;
pub const DEFAULT_REPEATS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Rgb,
    Xyz,
    Lab,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConnectivityArg {
    Off,
    Weak,
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Seq,
    Par,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// Comma-separated labels, one line per image row
    Csv,
    /// Binary 8-bit PGM (at most 256 labels)
    Pgm,
    /// Input image with superpixel boundaries drawn in red
    Overlay,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "superpix",
    version,
    about = "SLIC superpixel segmentation of PPM images, with a benchmark mode"
)]
pub struct Cli {
    /// Input images (binary PPM, P6)
    #[arg(long = "input", value_name = "PATH", num_args = 1.., required = true)]
    pub inputs: Vec<PathBuf>,

    /// Output directory [segment default: current directory; bench: CSV only on stdout]
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Target superpixel count(s); several values are allowed with --bench
    #[arg(long, value_name = "K", num_args = 1.., conflicts_with = "spixel_size")]
    pub superpixels: Vec<usize>,

    /// Superpixel side length in pixels [default: 16 when --superpixels is absent]
    #[arg(long = "spixel-size", value_name = "S")]
    pub spixel_size: Option<usize>,

    /// Compactness m (weight of spatial distance)
    #[arg(long, value_name = "M", default_value_t = DEFAULT_COMPACTNESS)]
    pub compactness: f64,

    /// Number of center-update iterations
    #[arg(long, value_name = "N", default_value_t = DEFAULT_ITERATIONS)]
    pub iters: usize,

    /// Stop early once the summed L1 center shift falls below this value
    #[arg(long = "stop-threshold", value_name = "T")]
    pub stop_threshold: Option<f64>,

    #[arg(long = "color-space", value_enum, default_value_t = SpaceArg::Lab)]
    pub color_space: SpaceArg,

    #[arg(long, value_enum, default_value_t = ConnectivityArg::Weak)]
    pub connectivity: ConnectivityArg,

    /// Smallest component kept by strict connectivity [default: S*S/4]
    #[arg(long = "min-size", value_name = "P")]
    pub min_size: Option<usize>,

    /// Move seeds to the lowest-gradient pixel of their 3x3 neighborhood
    #[arg(long)]
    pub perturb: bool,

    /// Backend(s) [segment default: par; bench default: seq and par]
    #[arg(long = "engine", value_enum)]
    pub engines: Vec<EngineArg>,

    /// Parallel backend worker count [default: available cores]
    #[arg(long, value_name = "W", env = "SUPERPIX_WORKERS")]
    pub workers: Option<usize>,

    /// Strip length used to tile search windows during the center update
    #[arg(long = "tile-len", value_name = "T", default_value_t = DEFAULT_TILE_LEN)]
    pub tile_len: usize,

    /// Output format (repeatable)
    #[arg(long = "format", value_enum, default_values_t = [FormatArg::Csv])]
    pub formats: Vec<FormatArg>,

    /// Run the timing benchmark instead of writing segmentations
    #[arg(long)]
    pub bench: bool,

    /// Timed runs per benchmark cell, after one untimed warm-up
    #[arg(long, value_name = "R", default_value_t = DEFAULT_REPEATS)]
    pub repeats: usize,

    /// Reserved; segmentation is deterministic and ignores it
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Validated configuration shared by segment and bench modes.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub inputs: Vec<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub sizes: Vec<SuperpixelSize>,
    pub compactness: f64,
    pub iterations: usize,
    pub stop_threshold: Option<f64>,
    pub color_space: ColorSpace,
    pub connectivity: Option<ConnectivityMode>,
    pub perturb: bool,
    pub tile_len: usize,
    pub engines: Vec<BackendKind>,
    pub formats: Vec<FormatArg>,
    pub bench: bool,
    pub repeats: usize,
}

impl CliConfig {
    /// Settings for one image of the given size.
    pub fn settings(&self, width: usize, height: usize, size: SuperpixelSize) -> Settings {
        let mut s = Settings::new(width, height, size);
        s.compactness = self.compactness;
        s.iterations = self.iterations;
        s.stop_threshold = self.stop_threshold;
        s.color_space = self.color_space;
        s.enforce_connectivity = self.connectivity.is_some();
        s.connectivity = self.connectivity.unwrap_or_default();
        s.perturb = self.perturb;
        s.tile_len = self.tile_len;
        s
    }
}

impl TryFrom<Cli> for CliConfig {
    type Error = CliError;

    fn try_from(cli: Cli) -> Result<Self, CliError> {
        let workers = cli.workers.unwrap_or_else(default_workers);
        if workers == 0 {
            return Err(CliError::Settings("--workers must be at least 1".into()));
        }
        if cli.repeats == 0 {
            return Err(CliError::Settings("--repeats must be at least 1".into()));
        }
        if cli.formats.is_empty() {
            return Err(CliError::Settings(
                "at least one --format is required".into(),
            ));
        }
        if cli.min_size.is_some() && cli.connectivity != ConnectivityArg::Strict {
            return Err(CliError::Settings(
                "--min-size requires --connectivity strict".into(),
            ));
        }
        let sizes = match cli.spixel_size {
            Some(s) => vec![SuperpixelSize::Side(s)],
            None if cli.superpixels.is_empty() => vec![SuperpixelSize::Side(DEFAULT_SPIXEL_SIZE)],
            None => cli
                .superpixels
                .iter()
                .map(|&k| SuperpixelSize::Count(k))
                .collect(),
        };
        let mut engines: Vec<BackendKind> = cli
            .engines
            .iter()
            .map(|e| match e {
                EngineArg::Seq => BackendKind::Sequential,
                EngineArg::Par => BackendKind::Parallel { workers },
            })
            .collect();
        engines.dedup();
        if engines.is_empty() {
            if cli.bench {
                engines = vec![BackendKind::Sequential, BackendKind::Parallel { workers }];
            } else {
                engines = vec![BackendKind::Parallel { workers }];
            }
        }
        if !cli.bench {
            if sizes.len() > 1 {
                return Err(CliError::Settings(
                    "several --superpixels values are only accepted with --bench".into(),
                ));
            }
            if engines.len() > 1 {
                return Err(CliError::Settings(
                    "several --engine values are only accepted with --bench".into(),
                ));
            }
        }
        let mut formats = cli.formats;
        formats.dedup();
        Ok(CliConfig {
            inputs: cli.inputs,
            out_dir: cli.out,
            sizes,
            compactness: cli.compactness,
            iterations: cli.iters,
            stop_threshold: cli.stop_threshold,
            color_space: match cli.color_space {
                SpaceArg::Rgb => ColorSpace::Rgb,
                SpaceArg::Xyz => ColorSpace::Xyz,
                SpaceArg::Lab => ColorSpace::Lab,
            },
            connectivity: match cli.connectivity {
                ConnectivityArg::Off => None,
                ConnectivityArg::Weak => Some(ConnectivityMode::Weak),
                ConnectivityArg::Strict => Some(ConnectivityMode::Strict {
                    min_size: cli.min_size,
                }),
            },
            perturb: cli.perturb,
            tile_len: cli.tile_len,
            engines,
            formats,
            bench: cli.bench,
            repeats: cli.repeats,
        })
    }
}
