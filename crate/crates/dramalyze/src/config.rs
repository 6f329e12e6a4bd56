//! Effective run configuration: built-in defaults, then an optional TOML
//! config file, then command-line flags.
//!
//! Config file keys are the long flag names without the leading dashes, e.g.
//!
//! ```toml
//! token-mode = "punct-attached"
//! segment-size = 30
//! track-words = "time,buzzing,long"
//! clean-stage-directions = false
//! ```
//!
//! Relative paths in a config file are resolved against the file's directory.

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use dramalyze_core::lexstats::{DEFAULT_MATTR_WINDOW, DEFAULT_TOP_N};
use dramalyze_core::motif::{DEFAULT_MOTIF_MIN_COUNT, DEFAULT_MOTIF_TOP_K};
use dramalyze_core::occurrence::{DEFAULT_COOC_WINDOW, DEFAULT_K_CLUSTERS};
use dramalyze_core::segment::DEFAULT_SEGMENT_SIZE;
use dramalyze_core::{CleaningConfig, MotifQuery, TokenMode};
use serde::Deserialize;

use crate::Error;

/// Environment variable naming a config file used when `--config` is absent.
pub const CONFIG_ENV: &str = "DRAMALYZE_CONFIG";
pub const DEFAULT_OUT_DIR: &str = "dramalyze-out";
pub const DEFAULT_WORDCLOUD_TOP_N: usize = 50;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmotionBackend {
    /// Bag-of-words scoring against a lexicon file (or the bundled demo lexicon).
    #[default]
    Lexicon,
    /// Scores read from a score-import JSON file.
    Import,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PieMode {
    /// Slices are the mean per-segment distribution.
    #[default]
    Mean,
    /// Slices are shares of segments by dominant label.
    Dominant,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overlap {
    Allow,
    #[default]
    Forbid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenModeArg {
    Plain,
    PunctAttached,
}

impl From<TokenModeArg> for TokenMode {
    fn from(m: TokenModeArg) -> Self {
        match m {
            TokenModeArg::Plain => TokenMode::Plain,
            TokenModeArg::PunctAttached => TokenMode::PunctAttached,
        }
    }
}

macro_rules! as_str_impl {
    ($t:ty { $($v:ident => $s:literal),* }) => {
        impl $t {
            pub fn as_str(self) -> &'static str {
                match self { $(Self::$v => $s),* }
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}
as_str_impl!(EmotionBackend { Lexicon => "lexicon", Import => "import" });
as_str_impl!(PieMode { Mean => "mean", Dominant => "dominant" });
as_str_impl!(Overlap { Allow => "allow", Forbid => "forbid" });

/// One layer of settings. Every field is optional so layers can be stacked;
/// the same struct is parsed from flags and from config files.
#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Settings {
    /// Output directory for analyze [default: dramalyze-out]
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Token normalization mode [default: plain]
    #[arg(long, global = true, value_enum)]
    pub token_mode: Option<TokenModeArg>,
    /// Tokens per performance segment [default: 30]
    #[arg(long, global = true, value_name = "N")]
    pub segment_size: Option<usize>,
    /// Stopword file, one norm per line [default: built-in English list]
    #[arg(long, global = true, value_name = "FILE")]
    pub stopwords: Option<PathBuf>,
    /// Rows in the frequency table [default: 7]
    #[arg(long, global = true, value_name = "N")]
    pub top_n: Option<usize>,
    /// Moving-average TTR window in tokens [default: 50]
    #[arg(long, global = true, value_name = "N")]
    pub mattr_window: Option<usize>,
    /// Clusters for occurrence clustering [default: 3]
    #[arg(long, global = true, value_name = "K")]
    pub k_clusters: Option<usize>,
    /// Co-occurrence window, tokens on each side [default: 5]
    #[arg(long, global = true, value_name = "W")]
    pub cooc_window: Option<usize>,
    /// Comma-separated words to track [default: the top-n frequency words]
    #[arg(long, global = true, value_name = "LIST")]
    pub track_words: Option<String>,
    /// Motifs to report [default: 10]
    #[arg(long, global = true, value_name = "N")]
    pub motif_top_k: Option<usize>,
    /// Minimum motif occurrence count, at least 2 [default: 2]
    #[arg(long, global = true, value_name = "N")]
    pub motif_min_count: Option<usize>,
    /// Whether motif occurrences may overlap [default: forbid]
    #[arg(long, global = true, value_enum)]
    pub motif_overlap: Option<Overlap>,
    /// Emotion scoring backend [default: lexicon]
    #[arg(long, global = true, value_enum)]
    pub emotion_backend: Option<EmotionBackend>,
    /// Score-import JSON file for --emotion-backend import
    #[arg(long, global = true, value_name = "FILE")]
    pub emotion_scores: Option<PathBuf>,
    /// Lexicon CSV for --emotion-backend lexicon [default: bundled demo lexicon]
    #[arg(long, global = true, value_name = "FILE")]
    pub lexicon: Option<PathBuf>,
    /// Pie chart semantics [default: mean]
    #[arg(long, global = true, value_enum)]
    pub pie: Option<PieMode>,
    /// Seed for breaking ties in cluster seeding [default: 0]
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Words shown in the word cloud [default: 50]
    #[arg(long, global = true, value_name = "N")]
    pub wordcloud_top_n: Option<usize>,
    /// Also write segments.json for external emotion scorers
    #[arg(long, global = true, value_name = "BOOL", num_args = 0..=1, default_missing_value = "true")]
    pub export_segments: Option<bool>,
    /// Cleaning: Unicode NFC normalization and quote folding [default: true]
    #[arg(long, global = true, value_name = "BOOL", num_args = 0..=1, default_missing_value = "true")]
    pub clean_normalize: Option<bool>,
    /// Cleaning: map the ellipsis character to "..." [default: true]
    #[arg(long, global = true, value_name = "BOOL", num_args = 0..=1, default_missing_value = "true")]
    pub clean_ellipsis: Option<bool>,
    /// Cleaning: collapse whitespace runs to one space [default: true]
    #[arg(long, global = true, value_name = "BOOL", num_args = 0..=1, default_missing_value = "true")]
    pub clean_whitespace: Option<bool>,
    /// Cleaning: strip bracketed stage directions [default: true]
    #[arg(long, global = true, value_name = "BOOL", num_args = 0..=1, default_missing_value = "true")]
    pub clean_stage_directions: Option<bool>,
    /// Cleaning: drop characters outside letters, digits and retained punctuation [default: true]
    #[arg(long, global = true, value_name = "BOOL", num_args = 0..=1, default_missing_value = "true")]
    pub clean_charset: Option<bool>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($f:ident),*) => {
        Settings { $($f: $top.$f.or($base.$f)),* }
    };
}

impl Settings {
    /// `top` wins wherever it sets a value.
    pub fn overlay(self, top: Settings) -> Settings {
        let base = self;
        overlay!(base, top; out, token_mode, segment_size, stopwords, top_n, mattr_window,
            k_clusters, cooc_window, track_words, motif_top_k, motif_min_count, motif_overlap,
            emotion_backend, emotion_scores, lexicon, pie, seed, wordcloud_top_n, export_segments,
            clean_normalize, clean_ellipsis, clean_whitespace, clean_stage_directions, clean_charset)
    }

    /// Parses a config file; relative paths are resolved against its directory.
    pub fn from_file(path: &Path) -> Result<Settings, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut s = Self::from_toml(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let dir = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut s.out,
            &mut s.stopwords,
            &mut s.emotion_scores,
            &mut s.lexicon,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
        Ok(s)
    }

    pub fn from_toml(text: &str) -> Result<Settings, String> {
        toml::from_str(text).map_err(|e| e.message().to_owned())
    }
}

/// The fully resolved configuration of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub out_dir: PathBuf,
    pub token_mode: TokenMode,
    pub segment_size: usize,
    pub cleaning: CleaningConfig,
    pub stopwords_path: Option<PathBuf>,
    pub top_n: usize,
    pub mattr_window: usize,
    pub k_clusters: usize,
    pub cooc_window: usize,
    /// Empty means "the top-n frequency words".
    pub track_words: Vec<String>,
    pub motif: MotifQuery,
    pub emotion_backend: EmotionBackend,
    pub emotion_scores: Option<PathBuf>,
    pub lexicon_path: Option<PathBuf>,
    pub pie: PieMode,
    pub seed: u64,
    pub wordcloud_top_n: usize,
    pub export_segments: bool,
}

impl RunConfig {
    /// Defaults only.
    pub fn new(input_path: impl Into<PathBuf>) -> Self {
        Self::resolve(input_path.into(), Settings::default()).expect("defaults are valid")
    }

    /// Applies defaults under `settings` and checks ranges.
    pub fn resolve(input_path: PathBuf, s: Settings) -> Result<Self, Error> {
        fn at_least(
            name: &str,
            v: Option<usize>,
            default: usize,
            min: usize,
        ) -> Result<usize, Error> {
            let v = v.unwrap_or(default);
            if v < min {
                return Err(Error::Config(format!(
                    "{name} must be at least {min}, got {v}"
                )));
            }
            Ok(v)
        }
        let cleaning = CleaningConfig {
            normalize: s.clean_normalize.unwrap_or(true),
            ellipsis: s.clean_ellipsis.unwrap_or(true),
            whitespace: s.clean_whitespace.unwrap_or(true),
            stage_directions: s.clean_stage_directions.unwrap_or(true),
            charset: s.clean_charset.unwrap_or(true),
        };
        let track_words = s
            .track_words
            .as_deref()
            .unwrap_or("")
            .split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(str::to_owned)
            .collect();
        let cfg = RunConfig {
            input_path,
            out_dir: s.out.unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR)),
            token_mode: s.token_mode.map_or(TokenMode::Plain, Into::into),
            segment_size: at_least("segment-size", s.segment_size, DEFAULT_SEGMENT_SIZE, 1)?,
            cleaning,
            stopwords_path: s.stopwords,
            top_n: at_least("top-n", s.top_n, DEFAULT_TOP_N, 1)?,
            mattr_window: at_least("mattr-window", s.mattr_window, DEFAULT_MATTR_WINDOW, 1)?,
            k_clusters: at_least("k-clusters", s.k_clusters, DEFAULT_K_CLUSTERS, 1)?,
            cooc_window: at_least("cooc-window", s.cooc_window, DEFAULT_COOC_WINDOW, 1)?,
            track_words,
            motif: MotifQuery {
                top_k: at_least("motif-top-k", s.motif_top_k, DEFAULT_MOTIF_TOP_K, 1)?,
                min_count: at_least(
                    "motif-min-count",
                    s.motif_min_count,
                    DEFAULT_MOTIF_MIN_COUNT,
                    2,
                )?,
                allow_overlap: s.motif_overlap.unwrap_or_default() == Overlap::Allow,
            },
            emotion_backend: s.emotion_backend.unwrap_or_default(),
            emotion_scores: s.emotion_scores,
            lexicon_path: s.lexicon,
            pie: s.pie.unwrap_or_default(),
            seed: s.seed.unwrap_or(DEFAULT_SEED),
            wordcloud_top_n: at_least(
                "wordcloud-top-n",
                s.wordcloud_top_n,
                DEFAULT_WORDCLOUD_TOP_N,
                1,
            )?,
            export_segments: s.export_segments.unwrap_or(false),
        };
        if cfg.emotion_backend == EmotionBackend::Import && cfg.emotion_scores.is_none() {
            return Err(Error::Config(
                "--emotion-backend import requires --emotion-scores <FILE>".into(),
            ));
        }
        Ok(cfg)
    }
}

/// Picks the config file: the explicit flag first, then the environment variable.
pub fn config_path(flag: Option<&Path>, env: Option<OsString>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| env.filter(|v| !v.is_empty()).map(PathBuf::from))
}

/// defaults < file < flags.
pub fn layered(
    input: PathBuf,
    config_file: Option<&Path>,
    flags: Settings,
) -> Result<RunConfig, Error> {
    let file = match config_file {
        Some(p) => Settings::from_file(p)?,
        None => Settings::default(),
    };
    RunConfig::resolve(input, file.overlay(flags))
}
