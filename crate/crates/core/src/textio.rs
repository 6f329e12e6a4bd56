//! Raw and cleaned document types, and the fixed-order cleaning pipeline.
//!
//! Cleaning runs its rules in a fixed order: normalization, ellipsis
//! unification, whitespace collapse, stage-direction stripping and finally
//! the character-set filter. Each rule can be switched off on its own.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use icu_normalizer::ComposingNormalizerBorrowed;
use serde::{Deserialize, Serialize};

/// A document exactly as read from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub source_path: String,
    pub content: String,
    pub byte_length: usize,
}

impl RawDocument {
    pub fn new(source_path: impl Into<String>, content: String) -> Self {
        let byte_length = content.len();
        Self {
            source_path: source_path.into(),
            content,
            byte_length,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CleanRule {
    Normalize,
    Ellipsis,
    Whitespace,
    StageDirections,
    Charset,
}

impl CleanRule {
    pub const ALL: [CleanRule; 5] = [
        CleanRule::Normalize,
        CleanRule::Ellipsis,
        CleanRule::Whitespace,
        CleanRule::StageDirections,
        CleanRule::Charset,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CleanRule::Normalize => "normalize",
            CleanRule::Ellipsis => "ellipsis",
            CleanRule::Whitespace => "whitespace",
            CleanRule::StageDirections => "stage-directions",
            CleanRule::Charset => "charset",
        }
    }
}

impl fmt::Display for CleanRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which cleaning rules are enabled. All rules are on by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CleaningConfig {
    pub normalize: bool,
    pub ellipsis: bool,
    pub whitespace: bool,
    pub stage_directions: bool,
    pub charset: bool,
}

impl Default for CleaningConfig {
    fn default() -> Self {
        Self::all()
    }
}

impl CleaningConfig {
    pub const fn all() -> Self {
        Self {
            normalize: true,
            ellipsis: true,
            whitespace: true,
            stage_directions: true,
            charset: true,
        }
    }

    pub const fn none() -> Self {
        Self {
            normalize: false,
            ellipsis: false,
            whitespace: false,
            stage_directions: false,
            charset: false,
        }
    }

    pub fn only(rules: &[CleanRule]) -> Self {
        let mut cfg = Self::none();
        for rule in rules {
            cfg.set(*rule, true);
        }
        cfg
    }

    pub fn enabled(&self, rule: CleanRule) -> bool {
        match rule {
            CleanRule::Normalize => self.normalize,
            CleanRule::Ellipsis => self.ellipsis,
            CleanRule::Whitespace => self.whitespace,
            CleanRule::StageDirections => self.stage_directions,
            CleanRule::Charset => self.charset,
        }
    }

    pub fn set(&mut self, rule: CleanRule, on: bool) {
        match rule {
            CleanRule::Normalize => self.normalize = on,
            CleanRule::Ellipsis => self.ellipsis = on,
            CleanRule::Whitespace => self.whitespace = on,
            CleanRule::StageDirections => self.stage_directions = on,
            CleanRule::Charset => self.charset = on,
        }
    }
}

/// Cleaned text plus the list of rules that actually changed something.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanDocument {
    pub content: String,
    pub applied_rules: Vec<CleanRule>,
    pub original_ref: String,
}

impl CleanDocument {
    /// Wraps text that is already clean (tests, re-tokenization).
    pub fn from_clean_text(content: impl Into<String>) -> Self {
        Self {
            content: content.into(),
            applied_rules: Vec::new(),
            original_ref: String::new(),
        }
    }
}

/// Punctuation kept by the charset rule, besides letters, digits, space and newline.
pub const RETAINED_PUNCTUATION: [char; 11] = [
    '.', '?', '!', ',', '\'', '-', '"', '(', ')', '\u{2014}', '\u{2013}',
];

pub fn clean(doc: &RawDocument, rules: &CleaningConfig) -> CleanDocument {
    let (content, applied_rules) = clean_text(&doc.content, rules);
    CleanDocument {
        content,
        applied_rules,
        original_ref: doc.source_path.clone(),
    }
}

/// Runs the cleaning rules over a string, returning the result and the rules that fired.
pub fn clean_text(input: &str, rules: &CleaningConfig) -> (String, Vec<CleanRule>) {
    let mut text = input.to_owned();
    let mut fired = Vec::new();
    for rule in CleanRule::ALL {
        if !rules.enabled(rule) {
            continue;
        }
        let next = match rule {
            CleanRule::Normalize => normalize(&text),
            CleanRule::Ellipsis => text.replace('\u{2026}', "..."),
            CleanRule::Whitespace => collapse_whitespace(&text),
            CleanRule::StageDirections => {
                let stripped = strip_stage_directions(&text);
                if rules.whitespace {
                    collapse_whitespace(&stripped)
                } else {
                    stripped
                }
            }
            CleanRule::Charset => {
                let mut filtered: String = text.chars().filter(|c| is_retained(*c)).collect();
                // dropping a character can bring a base and a combining mark together
                if rules.normalize {
                    filtered = normalize(&filtered);
                }
                if rules.whitespace {
                    collapse_whitespace(&filtered)
                } else {
                    filtered
                }
            }
        };
        if next != text {
            fired.push(rule);
            text = next;
        }
    }
    (text, fired)
}

fn normalize(text: &str) -> String {
    let nfc = ComposingNormalizerBorrowed::new_nfc().normalize(text);
    nfc.chars()
        .map(|c| match c {
            '\u{2018}' | '\u{2019}' | '\u{02BC}' => '\'',
            '\u{201C}' | '\u{201D}' => '"',
            other => other,
        })
        .collect()
}

fn collapse_whitespace(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// Removes balanced `[...]` spans (nesting allowed). An unclosed `[` and
/// everything after it is kept verbatim.
fn strip_stage_directions(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut depth = 0usize;
    let mut open_at = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '[' => {
                if depth == 0 {
                    open_at = i;
                }
                depth += 1;
            }
            ']' if depth > 0 => depth -= 1,
            _ if depth == 0 => out.push(c),
            _ => {}
        }
    }
    if depth > 0 {
        out.push_str(&text[open_at..]);
    }
    out
}

fn is_retained(c: char) -> bool {
    c.is_alphanumeric() || c == ' ' || c == '\n' || RETAINED_PUNCTUATION.contains(&c)
}
