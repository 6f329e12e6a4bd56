//! Analysis core for rhythm, repetition and emotional structure in dramatic
//! texts: cleaning, tokenization into breath-unit fragments, fixed-size
//! performance segments, word frequency and lexical diversity, occurrence
//! clustering and repetition-form metrics, suffix-array motif extraction,
//! per-segment emotion profiles and deterministic SVG charts.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, IO and the
//! command-line front end live in the `dramalyze` crate.
#![no_std]

extern crate alloc;

use alloc::string::String;

pub mod emotion;
pub mod lexstats;
pub mod motif;
pub mod occurrence;
pub mod report;
pub mod segment;
pub mod textio;
pub mod tokenize;
pub mod viz;

pub use emotion::{EmotionLabel, EmotionProfile, EmotionScore, Lexicon};
pub use lexstats::{DiversityReport, FrequencyTable, PunctuationStats};
pub use motif::{Motif, MotifQuery, SuffixIndex};
pub use occurrence::{ClusterAssignment, OccurrenceTrack, RepetitionForms};
pub use report::AnalysisReport;
pub use segment::Segment;
pub use textio::{CleanDocument, CleaningConfig, RawDocument};
pub use tokenize::{Token, TokenMode, TokenStream};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("no tokens")]
    NoTokens,
    #[error("unknown token mode {0:?} (expected plain or punct-attached)")]
    UnknownTokenMode(String),
    #[error("segment size must be positive")]
    ZeroSegmentSize,
    #[error("segment [{start},{end}) out of bounds for {len} tokens")]
    SegmentOutOfBounds {
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("diversity undefined on empty stream")]
    EmptyDiversity,
    #[error("window must be positive")]
    ZeroWindow,
    #[error("top-n must be positive")]
    ZeroTopN,
    #[error("k must be positive")]
    ZeroK,
    #[error("k exceeds occurrence count (k={k}, occurrences={occurrences})")]
    KExceedsOccurrences { k: usize, occurrences: usize },
    #[error("no occurrences of {0:?}")]
    NoOccurrences(String),
    #[error("motif min-count must be at least 2, got {0}")]
    MinCountTooSmall(usize),
    #[error("suffix index covers {index} tokens but the stream has {stream}")]
    IndexMismatch { index: usize, stream: usize },
    #[error("unknown emotion label {0:?}")]
    UnknownLabel(String),
    #[error("lexicon weight for {word:?} ({label}) must be a non-negative number")]
    InvalidWeight { word: String, label: EmotionLabel },
    #[error("segment {segment}: score for {label} must be a non-negative number")]
    InvalidScore { segment: usize, label: EmotionLabel },
    #[error("segment {0}: scores sum to zero")]
    ZeroScoreSum(usize),
    #[error("cannot aggregate an empty list of segment scores")]
    EmptyProfile,
    #[error("chart width and height must be positive")]
    ChartSize,
    #[error("chart kind does not match its data")]
    ChartDataMismatch,
    #[error("internal consistency error in {field}: {detail}")]
    CrossReference { field: String, detail: String },
}
