// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("ParseError: {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("ValidationError: {field}: {source_name}: {source}")]
    Validation {
        field: String,
        source_name: &'static str,
        #[source]
        source: scx_core::Error,
    },

    #[error("{name}: {0}", name = .0.name())]
    Numeric(#[from] scx_core::Error),

    #[error("IoError: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn usage(flag: &str, message: impl std::fmt::Display) -> Self {
        CliError::Usage(format!("invalid value for '{flag}': {message}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 1,
            CliError::Validation { .. } | CliError::Numeric(_) | CliError::Io { .. } => 2,
        }
    }
}
