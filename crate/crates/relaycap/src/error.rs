use std::io;

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("invalid sweep: {0}")]
    Validation(String),

    #[error("numerical failure: {0}")]
    Numerical(#[source] relaycap_core::Error),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl SweepError {
    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            SweepError::Validation(_) => 2,
            SweepError::Numerical(_) => 3,
            SweepError::Io { .. } => 4,
        }
    }
}

impl From<relaycap_core::Error> for SweepError {
    fn from(err: relaycap_core::Error) -> Self {
        use relaycap_core::Error::*;
        match err {
            NoConvergence { .. } => SweepError::Numerical(err),
            other => SweepError::Validation(other.to_string()),
        }
    }
}
