//! Command-line front end for `dhlc-core`: JSON in, JSON or CSV out, plus
//! the curated gallery with golden-file comparison.

pub mod commands;
pub mod gallery;
pub mod input;

use std::path::PathBuf;

pub const DEFAULT_SEED: u64 = 20_240_901;

/// Exit codes: 0 success, 1 negative verdict or gallery failure, 2
/// operational error, 3 genericity rejection.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Schema { path: PathBuf, source: dhlc_core::json::JsonError },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    NonGeneric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::NonGeneric(_) => 3,
            _ => 2,
        }
    }

    pub fn invalid(e: impl std::fmt::Display) -> Self {
        CliError::Invalid(e.to_string())
    }
}

/// Text to emit and whether it carries a negative verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub negative: bool,
}

impl Outcome {
    pub fn ok(text: String) -> Self {
        Outcome { text, negative: false }
    }

    pub fn exit_code(&self) -> u8 {
        u8::from(self.negative)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}
