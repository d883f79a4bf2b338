use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// Malformed input data, such as a CSV not written by `sweep`.
    #[error("input error: {0}")]
    Input(String),

    #[error("model error: {0}")]
    Model(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Input(_) => 1,
            CliError::Model(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<sideband_core::Error> for CliError {
    fn from(e: sideband_core::Error) -> Self {
        CliError::Model(e.to_string())
    }
}
