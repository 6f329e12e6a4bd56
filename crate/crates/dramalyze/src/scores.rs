//! Score-import and segment-export JSON, the file contract with external
//! emotion scorers.
//!
//! Import document:
//! `{"labels": [...7 canonical labels...], "backend": "...",
//!   "segments": [{"index": 0, "scores": [7 floats]}, ...]}`
//!
//! Segment export: `{"segments": [{"index": 0, "text": "..."}, ...]}`

use std::path::Path;

use dramalyze_core::emotion::{
    validate_scores, EmotionLabel, EmotionScore, ScoreVector, LABEL_COUNT,
};
use dramalyze_core::segment::{segment_text, Segment};
use dramalyze_core::TokenStream;
use serde::{Deserialize, Serialize};

use crate::{io, sha256_hex, Error};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoreFile {
    pub labels: Vec<String>,
    pub backend: String,
    pub segments: Vec<ScoreEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoreEntry {
    pub index: usize,
    pub scores: Vec<f64>,
}

/// Validated imported scores.
#[derive(Debug, Clone, PartialEq)]
pub struct ImportedScores {
    pub backend: String,
    pub sha256: String,
    /// One score per segment, ordered by segment index.
    pub scores: Vec<EmotionScore>,
    /// One message per renormalized segment.
    pub warnings: Vec<String>,
}

/// Reads and validates a score file for `expected_segments` segments.
pub fn import_scores(path: &Path, expected_segments: usize) -> Result<ImportedScores, Error> {
    let bytes = io::read_bytes(path)?;
    let source = path.display().to_string();
    let mut imported =
        import_bytes(&bytes, expected_segments).map_err(|message| Error::Scores {
            path: source.clone(),
            message,
        })?;
    for w in &mut imported.warnings {
        *w = format!("{source}: {w}");
    }
    Ok(imported)
}

/// Validation on in-memory bytes; errors are plain messages.
pub fn import_bytes(bytes: &[u8], expected_segments: usize) -> Result<ImportedScores, String> {
    let file: ScoreFile =
        serde_json::from_slice(bytes).map_err(|e| format!("malformed score file: {e}"))?;

    for l in &file.labels {
        l.parse::<EmotionLabel>()
            .map_err(|_| format!("unknown label {l:?}"))?;
    }
    let canonical: Vec<&str> = EmotionLabel::ALL.iter().map(|l| l.as_str()).collect();
    if file.labels != canonical {
        return Err(format!(
            "labels must be exactly [{}] in that order",
            canonical.join(", ")
        ));
    }

    let mut slots: Vec<Option<ScoreVector>> = vec![None; expected_segments];
    for entry in &file.segments {
        let i = entry.index;
        if i >= expected_segments {
            return Err(format!(
                "segment {i} out of range (expected indices 0..{expected_segments})"
            ));
        }
        if slots[i].is_some() {
            return Err(format!("segment {i} duplicated"));
        }
        let v: ScoreVector = entry.scores.as_slice().try_into().map_err(|_| {
            format!(
                "segment {i}: expected {LABEL_COUNT} scores, found {}",
                entry.scores.len()
            )
        })?;
        slots[i] = Some(v);
    }

    let mut scores = Vec::with_capacity(expected_segments);
    let mut warnings = Vec::new();
    for (i, slot) in slots.into_iter().enumerate() {
        let v = slot.ok_or_else(|| format!("segment {i} absent"))?;
        let checked = validate_scores(i, &v).map_err(|e| e.to_string())?;
        if checked.renormalized {
            warnings.push(format!(
                "segment {i}: scores sum to {}, renormalized",
                checked.original_sum
            ));
        }
        scores.push(EmotionScore {
            segment_index: i,
            scores: checked.scores,
        });
    }
    Ok(ImportedScores {
        backend: file.backend,
        sha256: sha256_hex(bytes),
        scores,
        warnings,
    })
}

/// Serializes scores in the import format.
pub fn to_json(backend: &str, scores: &[EmotionScore]) -> String {
    let file = ScoreFile {
        labels: EmotionLabel::ALL
            .iter()
            .map(|l| l.as_str().to_owned())
            .collect(),
        backend: backend.to_owned(),
        segments: scores
            .iter()
            .map(|s| ScoreEntry {
                index: s.segment_index,
                scores: s.scores.to_vec(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("plain data serializes");
    out.push('\n');
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentExport {
    pub segments: Vec<ExportedSegment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportedSegment {
    pub index: usize,
    pub text: String,
}

/// Segment texts (surfaces joined by spaces) for external scorers.
pub fn export_segments(stream: &TokenStream, segments: &[Segment]) -> Result<String, Error> {
    let export = SegmentExport {
        segments: segments
            .iter()
            .map(|s| {
                Ok(ExportedSegment {
                    index: s.index,
                    text: segment_text(stream, s)?,
                })
            })
            .collect::<Result<_, dramalyze_core::Error>>()?,
    };
    let mut out = serde_json::to_string_pretty(&export).expect("plain data serializes");
    out.push('\n');
    Ok(out)
}
