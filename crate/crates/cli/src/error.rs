use std::path::PathBuf;

use thiserror::Error;

/// Everything that can end a CLI run, each mapped to one exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0} check(s) failed")]
    CheckFailed(usize),

    #[error(transparent)]
    Core(#[from] risfade_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Core(e) => match e {
                risfade_core::Error::Config { .. }
                | risfade_core::Error::InvalidParams(_)
                | risfade_core::Error::UnknownPreset { .. }
                | risfade_core::Error::Domain { .. } => 2,
                _ => 1,
            },
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>, e: csv::Error) -> Self {
        let path = path.into();
        match e.into_kind() {
            csv::ErrorKind::Io(source) => CliError::Io { path, source },
            other => CliError::Io {
                path,
                source: std::io::Error::other(format!("{other:?}")),
            },
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
