use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::audio::AudioError;
use crate::phone::PhoneError;
use crate::prosody::ConfigError;
use crate::studykit::StudyError;
use crate::svg::RenderError;
use crate::viseme::{TrackError, VisemeTableError};

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Phone { path: PathBuf, source: PhoneError },
    #[error(transparent)]
    Utterance(#[from] PhoneError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    VisemeTable(#[from] VisemeTableError),
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error(transparent)]
    Audio(#[from] AudioError),
    #[error(transparent)]
    Study(#[from] StudyError),
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// True for failures of the file system rather than of the input data.
    pub fn is_io(&self) -> bool {
        match self {
            Error::File { .. } | Error::Io(_) => true,
            Error::Config(e) => matches!(e, ConfigError::Io(_)),
            Error::VisemeTable(e) => matches!(e, VisemeTableError::Io(_)),
            Error::Json { source, .. } => source.is_io(),
            _ => false,
        }
    }

    pub fn file(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> Error {
        let path = path.into();
        move |source| Error::File { path, source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
