use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot load {}: {source}", path.display())]
    Input {
        path: PathBuf,
        #[source]
        source: superpix::Error,
    },

    #[error("cannot write {}: {source}", path.display())]
    Output {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{}: {source}", path.display())]
    Segment {
        path: PathBuf,
        #[source]
        source: superpix::Error,
    },

    #[error("cannot write {} as PGM: label {max_label} exceeds 255", path.display())]
    LabelCapacity { path: PathBuf, max_label: u32 },

    #[error("invalid settings: {0}")]
    Settings(String),
}

impl CliError {
    /// 1 for I/O failures, 2 for rejected settings.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } | CliError::Output { .. } => 1,
            CliError::Segment { source, .. } if !source.is_settings_error() => 1,
            CliError::Segment { .. } | CliError::LabelCapacity { .. } | CliError::Settings(_) => 2,
        }
    }
}
