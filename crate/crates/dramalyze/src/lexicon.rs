//! Emotion lexicon files.
//!
//! One entry per line: `word,anger,disgust,fear,joy,neutral,sadness,surprise`
//! with non-negative decimal weights. An optional first line spelling out
//! exactly those column names is treated as a header; lines starting with `#`
//! are comments.

use std::path::Path;

use dramalyze_core::emotion::{EmotionLabel, Lexicon, ScoreVector, LABEL_COUNT};

use crate::{io, sha256_hex, Error};

/// Identifier recorded in reports when the bundled demo lexicon is used.
pub const DEMO_SOURCE: &str = "builtin:lexicon-demo-v1";

const DEMO_TEXT: &str = include_str!("../data/lexicon-demo.csv");

/// A parsed lexicon together with where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedLexicon {
    pub source: String,
    pub sha256: String,
    pub lexicon: Lexicon,
}

impl LoadedLexicon {
    pub fn demo() -> Self {
        Self {
            source: DEMO_SOURCE.into(),
            sha256: sha256_hex(DEMO_TEXT.as_bytes()),
            lexicon: parse(DEMO_TEXT, DEMO_SOURCE).expect("bundled lexicon is well-formed"),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, Error> {
        let bytes = io::read_bytes(path)?;
        let text = std::str::from_utf8(&bytes).map_err(|e| Error::InvalidUtf8 {
            path: path.to_path_buf(),
            offset: e.valid_up_to(),
        })?;
        let source = path.display().to_string();
        Ok(Self {
            lexicon: parse(text, &source)?,
            sha256: sha256_hex(&bytes),
            source,
        })
    }
}

fn is_header(fields: &[&str]) -> bool {
    fields.len() == LABEL_COUNT + 1
        && fields[0] == "word"
        && EmotionLabel::ALL
            .iter()
            .zip(&fields[1..])
            .all(|(l, f)| l.as_str() == *f)
}

/// Parses lexicon text; `source` is only used in error messages.
pub fn parse(text: &str, source: &str) -> Result<Lexicon, Error> {
    let mut lexicon = Lexicon::new();
    let mut seen_data = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i as u64 + 1;
        let fail = |message: String| Error::Lexicon {
            path: source.into(),
            line,
            message,
        };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if !seen_data && is_header(&fields) {
            seen_data = true;
            continue;
        }
        seen_data = true;
        if fields.len() != LABEL_COUNT + 1 {
            return Err(fail(format!(
                "expected {} fields, found {}",
                LABEL_COUNT + 1,
                fields.len()
            )));
        }
        let word = fields[0];
        if word.is_empty() || word.chars().any(char::is_whitespace) {
            return Err(fail(format!("invalid word {word:?}")));
        }
        let mut weights: ScoreVector = [0.0; LABEL_COUNT];
        for (k, label) in EmotionLabel::ALL.iter().enumerate() {
            let field = fields[k + 1];
            weights[k] = field
                .parse::<f64>()
                .ok()
                .filter(|w| w.is_finite() && *w >= 0.0)
                .ok_or_else(|| {
                    fail(format!(
                        "weight {field:?} for {label} is not a non-negative number"
                    ))
                })?;
        }
        lexicon.insert(word, weights)?;
    }
    Ok(lexicon)
}
