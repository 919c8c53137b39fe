use thiserror::Error;

/// Failure modes shared across the crate.
///
/// The variants map one-to-one onto process exit classes in the CLI:
/// domain errors are caller mistakes, computational errors are numerical
/// failures, integrity errors mean an internal invariant was broken.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("computational error: {0}")]
    Computational(String),
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("size error: {0}")]
    Size(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn computational(msg: impl Into<String>) -> Self {
        Error::Computational(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }

    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Computational(_) => "computational",
            Error::Integrity(_) => "integrity",
            Error::Size(_) => "size",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
