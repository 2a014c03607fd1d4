use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("size limit exceeded: {what} = {size} > cap {cap}")]
    Size {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("malformed circuit: {0}")]
    Structure(String),

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("distribution not normalized (total {total})")]
    NotNormalized { total: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that signal a violated numerical contract rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NotUnitary { .. } | Error::NotNormalized { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
