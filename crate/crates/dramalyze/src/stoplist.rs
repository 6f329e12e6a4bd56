//! Stopword lists: the pinned built-in English list or a user file.

use std::collections::BTreeSet;
use std::path::Path;

use crate::{io, sha256_hex, Error};

/// Identifier recorded in reports when the built-in list is used.
pub const BUILTIN_SOURCE: &str = "builtin:stopwords-en-v1";

const BUILTIN_TEXT: &str = include_str!("../data/stopwords-en-v1.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stoplist {
    /// `builtin:...` or the file path.
    pub source: String,
    /// SHA-256 of the list's file bytes.
    pub sha256: String,
    pub words: BTreeSet<String>,
}

impl Stoplist {
    pub fn builtin() -> Self {
        Self {
            source: BUILTIN_SOURCE.into(),
            sha256: sha256_hex(BUILTIN_TEXT.as_bytes()),
            words: parse(BUILTIN_TEXT),
        }
    }

    /// One norm per line; blank lines and lines starting with `#` are ignored.
    pub fn from_file(path: &Path) -> Result<Self, Error> {
        let bytes = io::read_bytes(path)?;
        let text = std::str::from_utf8(&bytes).map_err(|e| Error::InvalidUtf8 {
            path: path.to_path_buf(),
            offset: e.valid_up_to(),
        })?;
        Ok(Self {
            source: path.display().to_string(),
            sha256: sha256_hex(&bytes),
            words: parse(text),
        })
    }
}

/// Lowercased, trimmed entries.
pub fn parse(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}
