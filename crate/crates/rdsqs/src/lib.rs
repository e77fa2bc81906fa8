//! File formats, the checked-in datasets, parallel drivers and the output
//! layout of the `rdsqs` command-line tool. All mathematics lives in
//! `rdsqs_core`.

use std::path::{Path, PathBuf};

pub mod data;
pub mod format;
pub mod output;
pub mod parallel;

pub use rdsqs_core as core;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: format::ParseError,
    },
    #[error(transparent)]
    Design(#[from] rdsqs_core::DesignError),
}

impl Error {
    pub fn parse(path: &Path, source: format::ParseError) -> Error {
        Error::Parse {
            path: path.to_path_buf(),
            source,
        }
    }
}
