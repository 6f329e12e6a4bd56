//! The assembled analysis report and its internal-consistency checks.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::emotion::{EmotionProfile, SUM_TOLERANCE};
use crate::lexstats::{DiversityReport, FrequencyTable, PunctuationStats};
use crate::motif::{Motif, MotifQuery};
use crate::occurrence::{ClusterAssignment, OccurrenceTrack, RepetitionForms, TrackMembership};
use crate::segment::Segment;
use crate::textio::{CleanRule, CleaningConfig};
use crate::tokenize::TokenMode;
use crate::Error;

pub const SCHEMA_VERSION: &str = "1.0.0";

/// Every parameter that can change a number in the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub token_mode: TokenMode,
    pub segment_size: usize,
    pub cleaning: CleaningConfig,
    pub stoplist_source: String,
    pub stoplist_sha256: String,
    pub top_n: usize,
    pub mattr_window: usize,
    pub k_clusters: usize,
    pub cooc_window: usize,
    pub track_words: Vec<String>,
    pub motif: MotifQuery,
    pub emotion_backend: String,
    pub emotion_source_sha256: String,
    pub pie: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub sha256: String,
    pub byte_length: usize,
    pub applied_rules: Vec<CleanRule>,
    pub token_count: usize,
    pub fragment_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub config_echo: ConfigEcho,
    pub input: InputSummary,
    pub frequency: FrequencyTable,
    pub wordcloud: Vec<(String, f64)>,
    /// Absent for an empty stream.
    pub diversity: Option<DiversityReport>,
    pub punctuation: PunctuationStats,
    pub segments: Vec<Segment>,
    pub tracks: Vec<OccurrenceTrack>,
    /// Absent when the tracked words occur fewer than `k` times in total.
    pub clusters: Option<ClusterAssignment>,
    pub cluster_membership: Vec<TrackMembership>,
    pub repetition_forms: Vec<RepetitionForms>,
    pub motifs: Vec<Motif>,
    /// Absent when there are no segments.
    pub emotions: Option<EmotionProfile>,
}

/// Everything the pipeline produced for one token stream.
#[derive(Debug, Clone)]
pub struct ModuleOutputs {
    pub input: InputSummary,
    pub frequency: FrequencyTable,
    pub wordcloud: Vec<(String, f64)>,
    pub diversity: Option<DiversityReport>,
    pub punctuation: PunctuationStats,
    pub segments: Vec<Segment>,
    pub tracks: Vec<OccurrenceTrack>,
    pub clusters: Option<ClusterAssignment>,
    pub repetition_forms: Vec<RepetitionForms>,
    pub motifs: Vec<Motif>,
    pub emotions: Option<EmotionProfile>,
}

pub fn assemble(outputs: ModuleOutputs, config: ConfigEcho) -> Result<AnalysisReport, Error> {
    let cluster_membership = outputs
        .clusters
        .as_ref()
        .map(|c| c.membership(&outputs.tracks))
        .unwrap_or_default();
    let report = AnalysisReport {
        schema_version: String::from(SCHEMA_VERSION),
        config_echo: config,
        input: outputs.input,
        frequency: outputs.frequency,
        wordcloud: outputs.wordcloud,
        diversity: outputs.diversity,
        punctuation: outputs.punctuation,
        segments: outputs.segments,
        tracks: outputs.tracks,
        clusters: outputs.clusters,
        cluster_membership,
        repetition_forms: outputs.repetition_forms,
        motifs: outputs.motifs,
        emotions: outputs.emotions,
    };
    report.validate()?;
    Ok(report)
}

fn fail(field: String, detail: &str) -> Error {
    Error::CrossReference {
        field,
        detail: String::from(detail),
    }
}

fn strictly_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl AnalysisReport {
    /// Checks cross-references between sections; the error names the offending field.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.input.token_count;
        if self.schema_version != SCHEMA_VERSION {
            return Err(fail(
                "schema_version".into(),
                "does not match writer version",
            ));
        }

        let sum: usize = self.frequency.entries.iter().map(|e| e.count).sum();
        if sum != self.frequency.total_counted || self.frequency.total_counted > n {
            return Err(fail(
                "frequency.total_counted".into(),
                "does not match entry counts",
            ));
        }
        for (i, w) in self.frequency.entries.windows(2).enumerate() {
            if w[0].count < w[1].count || (w[0].count == w[1].count && w[0].norm >= w[1].norm) {
                return Err(fail(
                    format!("frequency.entries[{}]", i + 1),
                    "out of rank order",
                ));
            }
        }
        for (i, e) in self.frequency.entries.iter().enumerate() {
            if e.rank != i + 1 {
                return Err(fail(
                    format!("frequency.entries[{i}].rank"),
                    "ranks must be 1..n",
                ));
            }
        }

        let mut expect = 0;
        for (i, s) in self.segments.iter().enumerate() {
            if s.index != i
                || s.start != expect
                || s.end < s.start
                || s.token_count != s.end - s.start
            {
                return Err(fail(
                    format!("segments[{i}]"),
                    "segments must tile the stream",
                ));
            }
            expect = s.end;
        }
        if expect != n {
            return Err(fail("segments".into(), "segments do not cover every token"));
        }

        if let Some(d) = &self.diversity {
            if d.per_segment_ttr.len() != self.segments.len() {
                return Err(fail(
                    "diversity.per_segment_ttr".into(),
                    "one ratio per segment required",
                ));
            }
            if !(d.ttr > 0.0 && d.ttr <= 1.0) || !(d.mattr > 0.0 && d.mattr <= 1.0) {
                return Err(fail("diversity".into(), "ratios must lie in (0, 1]"));
            }
        } else if n > 0 {
            return Err(fail("diversity".into(), "missing for a non-empty stream"));
        }

        for (i, t) in self.tracks.iter().enumerate() {
            if !strictly_increasing(&t.positions) {
                return Err(fail(
                    format!("tracks[{i}].positions"),
                    "must be strictly increasing",
                ));
            }
            if t.positions.last().is_some_and(|&p| p >= n) {
                return Err(fail(
                    format!("tracks[{i}].positions"),
                    "position beyond token count",
                ));
            }
        }

        if let Some(c) = &self.clusters {
            if c.labels.len() != c.positions.len() {
                return Err(fail(
                    "clusters.labels".into(),
                    "one label per pooled position required",
                ));
            }
            if c.positions.last().is_some_and(|&p| p >= n) {
                return Err(fail(
                    "clusters.positions".into(),
                    "position beyond token count",
                ));
            }
            if c.labels.windows(2).any(|w| w[0] > w[1]) || c.labels.iter().any(|&l| l >= c.k) {
                return Err(fail(
                    "clusters.labels".into(),
                    "labels must be contiguous cluster ids",
                ));
            }
            if c.centroids.len() != c.k || c.boundaries.len() + 1 != c.k {
                return Err(fail(
                    "clusters.centroids".into(),
                    "k centroids and k-1 boundaries required",
                ));
            }
            let (lo, hi) = (
                c.positions[0] as f64,
                *c.positions.last().unwrap_or(&0) as f64,
            );
            if c.centroids.iter().any(|&x| x < lo || x > hi) {
                return Err(fail(
                    "clusters.centroids".into(),
                    "centroid outside the position range",
                ));
            }
        }

        for (i, m) in self.motifs.iter().enumerate() {
            if m.length != m.token_norms.len() || m.length == 0 {
                return Err(fail(
                    format!("motifs[{i}].length"),
                    "must equal the number of norms",
                ));
            }
            if m.count != m.occurrences.len() || m.count < 2 {
                return Err(fail(
                    format!("motifs[{i}].count"),
                    "must equal occurrences, at least 2",
                ));
            }
            if !strictly_increasing(&m.occurrences) {
                return Err(fail(
                    format!("motifs[{i}].occurrences"),
                    "must be strictly increasing",
                ));
            }
            if let Some(j) = m.occurrences.iter().position(|&o| o + m.length > n) {
                return Err(fail(
                    format!("motifs[{i}].occurrences[{j}]"),
                    "occurrence runs past the token count",
                ));
            }
        }

        match &self.emotions {
            Some(p) => {
                if p.per_segment.len() != self.segments.len() {
                    return Err(fail(
                        "emotions.per_segment".into(),
                        "one score per segment required",
                    ));
                }
                for (i, s) in p.per_segment.iter().enumerate() {
                    let sum: f64 = s.scores.iter().sum();
                    if s.segment_index != i
                        || (sum - 1.0).abs() > SUM_TOLERANCE
                        || s.scores.iter().any(|x| *x < 0.0)
                    {
                        return Err(fail(
                            format!("emotions.per_segment[{i}]"),
                            "invalid score vector",
                        ));
                    }
                }
                if p.dominant_counts.iter().sum::<usize>() != self.segments.len() {
                    return Err(fail(
                        "emotions.dominant_counts".into(),
                        "must sum to the segment count",
                    ));
                }
            }
            None if !self.segments.is_empty() => {
                return Err(fail("emotions".into(), "missing although segments exist"));
            }
            None => {}
        }
        Ok(())
    }
}
