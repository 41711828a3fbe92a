use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Load {
        path: PathBuf,
        source: povm_order::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] povm_order::Error),
}

fn core_code(e: &povm_order::Error) -> u8 {
    match e {
        povm_order::Error::Json(_) | povm_order::Error::Parse(_) => 2,
        _ => 1,
    }
}

impl CliError {
    /// 1 for semantic failures, 2 for I/O and parse errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Load { source, .. } => core_code(source),
            CliError::Core(e) => core_code(e),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
