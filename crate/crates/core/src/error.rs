use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The page holds no words at all.
    #[error("page contains no words")]
    EmptyPage,

    /// No candidate node carries enough text to be called content.
    #[error("no content found: {0}")]
    NoContent(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("tree of {size} nodes exceeds the brute-force limit of {limit}")]
    TreeTooLarge { size: usize, limit: usize },

    #[error("node {0} has no parent")]
    NoParent(usize),

    #[error("no html/gold pairs found in {}", .0.display())]
    NoPairs(PathBuf),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True when the error means the page had nothing worth extracting,
    /// as opposed to a usage or I/O problem.
    pub fn is_content_free(&self) -> bool {
        matches!(self, Error::EmptyPage | Error::NoContent(_))
    }
}
