use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] cluster_rsp::Error),
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 3 for output that could not be written, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Write { .. } => 3,
            _ => 2,
        }
    }
}
