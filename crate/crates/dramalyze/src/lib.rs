//! File formats, configuration and the command-line front end for the
//! `dramalyze-core` analysis pipeline.
//!
//! The library half exists so the binary stays a thin shell and so tests can
//! drive the whole pipeline in-process.

pub mod cli;
pub mod config;
pub mod io;
pub mod lexicon;
pub mod output;
pub mod pipeline;
pub mod scores;
pub mod stoplist;

use std::path::PathBuf;

use sha2::{Digest, Sha256};

/// Process exit code on success.
pub const EXIT_OK: i32 = 0;
/// Process exit code for unknown flags, bad flag values and bad config files.
pub const EXIT_USAGE: i32 = 1;
/// Process exit code for unreadable or invalid input data.
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: invalid UTF-8 at byte {offset}")]
    InvalidUtf8 { path: PathBuf, offset: usize },
    #[error("{path}: line {line}: {message}")]
    Lexicon {
        path: String,
        line: u64,
        message: String,
    },
    #[error("{path}: {message}")]
    Scores { path: String, message: String },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] dramalyze_core::Error),
}

impl Error {
    /// Exit code class of this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        }
    }
}

/// Lowercase hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
