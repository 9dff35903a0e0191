use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("file not found: {}", .0.display())]
    NotFound(PathBuf),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("malformed PPM header: {0}")]
    MalformedHeader(String),

    #[error("truncated PPM payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("unsupported PPM maxval {0}, only 255 is accepted")]
    UnsupportedMaxval(u32),

    #[error("invalid settings: {0}")]
    InvalidSettings(String),

    #[error("dimension mismatch: expected {}x{}, got {}x{}", expected.0, expected.1, actual.0, actual.1)]
    DimensionMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("frame {frame}: dimension mismatch: expected {}x{}, got {}x{}", expected.0, expected.1, actual.0, actual.1)]
    FrameDimensionMismatch {
        frame: usize,
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("superpixel maps were built on different grids")]
    GridMismatch,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        let path = path.into();
        if source.kind() == io::ErrorKind::NotFound {
            Error::NotFound(path)
        } else {
            Error::Io { path, source }
        }
    }

    /// True for errors caused by the caller's parameters rather than by
    /// files or streams.
    pub fn is_settings_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidSettings(_)
                | Error::DimensionMismatch { .. }
                | Error::FrameDimensionMismatch { .. }
                | Error::GridMismatch
        )
    }
}
