//! The full analysis pipeline over one document.

use dramalyze_core::emotion::{aggregate, score_lexicon, EmotionLabel, EmotionProfile};
use dramalyze_core::lexstats::{
    lexical_diversity, punctuation_stats, word_frequencies, wordcloud_data,
};
use dramalyze_core::motif::{build_suffix_index, longest_repeats, motif_chart_data};
use dramalyze_core::occurrence::{cluster_positions, gantt_data, repetition_forms, track_word};
use dramalyze_core::report::{assemble, ConfigEcho, InputSummary, ModuleOutputs};
use dramalyze_core::segment::{segment_stream, segment_text, Segment};
use dramalyze_core::textio::clean;
use dramalyze_core::tokenize::{normalize_token, tokenize};
use dramalyze_core::viz::{render, ChartData, ChartSpec};
use dramalyze_core::{
    AnalysisReport, CleanDocument, ClusterAssignment, FrequencyTable, Motif, MotifQuery,
    OccurrenceTrack, RawDocument, RepetitionForms, TokenMode, TokenStream,
};

use crate::config::{EmotionBackend, PieMode, RunConfig};
use crate::lexicon::LoadedLexicon;
use crate::scores::{export_segments, import_scores};
use crate::stoplist::Stoplist;
use crate::{sha256_hex, Error};

/// Neighbors kept per word in the associative repetition list.
pub const MAX_ASSOCIATIONS: usize = 10;

/// Chart file names, in the order they are produced.
pub const CHART_FILES: [&str; 4] = ["pie.svg", "occurrences.svg", "motifs.svg", "wordcloud.svg"];

/// Cleaned text and its token streams.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub input: InputSummary,
    pub clean: CleanDocument,
    /// Tokens in the configured mode.
    pub stream: TokenStream,
}

pub fn prepare(raw: &RawDocument, cfg: &RunConfig) -> Prepared {
    let clean = clean(raw, &cfg.cleaning);
    let stream = tokenize(&clean, cfg.token_mode);
    Prepared {
        input: InputSummary {
            sha256: sha256_hex(raw.content.as_bytes()),
            byte_length: raw.byte_length,
            applied_rules: clean.applied_rules.clone(),
            token_count: stream.len(),
            fragment_count: stream.fragment_count,
        },
        clean,
        stream,
    }
}

pub fn load_stoplist(cfg: &RunConfig) -> Result<Stoplist, Error> {
    match &cfg.stopwords_path {
        Some(p) => Stoplist::from_file(p),
        None => Ok(Stoplist::builtin()),
    }
}

/// Words to track: the configured list normalized in the run's token mode,
/// or the top-n frequency words.
pub fn tracked_words(cfg: &RunConfig, freq: &FrequencyTable) -> Vec<String> {
    if cfg.track_words.is_empty() {
        return freq.top(cfg.top_n).iter().map(|e| e.norm.clone()).collect();
    }
    let mut out: Vec<String> = Vec::new();
    for w in &cfg.track_words {
        let n = normalize_token(w, cfg.token_mode);
        if !out.contains(&n) {
            out.push(n);
        }
    }
    out
}

/// Occurrence tracks, pooled clustering and per-word repetition forms.
#[derive(Debug, Clone)]
pub struct Occurrences {
    pub tracks: Vec<OccurrenceTrack>,
    pub clusters: Option<ClusterAssignment>,
    pub forms: Vec<RepetitionForms>,
    pub warnings: Vec<String>,
}

pub fn occurrences(
    stream: &TokenStream,
    words: &[String],
    cfg: &RunConfig,
) -> Result<Occurrences, Error> {
    let mut warnings = Vec::new();
    let tracks: Vec<OccurrenceTrack> = words.iter().map(|w| track_word(stream, w)).collect();
    let mut forms = Vec::new();
    for t in &tracks {
        if t.positions.is_empty() {
            warnings.push(format!("tracked word {:?} does not occur", t.norm));
            continue;
        }
        let mut f = repetition_forms(stream, &t.norm, cfg.cooc_window)?;
        f.associative.truncate(MAX_ASSOCIATIONS);
        forms.push(f);
    }
    let pooled: usize = tracks.iter().map(|t| t.positions.len()).sum();
    let clusters = if pooled >= cfg.k_clusters {
        Some(cluster_positions(&tracks, cfg.k_clusters, cfg.seed)?)
    } else {
        warnings.push(format!(
            "clustering skipped: k exceeds occurrence count (k={}, occurrences={pooled})",
            cfg.k_clusters
        ));
        None
    };
    Ok(Occurrences {
        tracks,
        clusters,
        forms,
        warnings,
    })
}

/// Motifs over plain-mode norms, so trailing punctuation never splits a repeat.
pub fn motifs(prepared: &Prepared, query: &MotifQuery) -> Result<Vec<Motif>, Error> {
    let plain;
    let stream = if prepared.stream.mode == TokenMode::Plain {
        &prepared.stream
    } else {
        plain = tokenize(&prepared.clean, TokenMode::Plain);
        &plain
    };
    let index = build_suffix_index(stream);
    Ok(longest_repeats(&index, stream, query)?)
}

/// Emotion profile plus provenance of the scores.
#[derive(Debug, Clone)]
pub struct Emotions {
    pub profile: Option<EmotionProfile>,
    pub source_sha256: String,
    pub warnings: Vec<String>,
}

pub fn emotions(
    cfg: &RunConfig,
    stream: &TokenStream,
    segments: &[Segment],
) -> Result<Emotions, Error> {
    match cfg.emotion_backend {
        EmotionBackend::Lexicon => {
            let lex = match &cfg.lexicon_path {
                Some(p) => LoadedLexicon::from_file(p)?,
                None => LoadedLexicon::demo(),
            };
            let mut scores = Vec::with_capacity(segments.len());
            for s in segments {
                scores.push(score_lexicon(
                    s.index,
                    &segment_text(stream, s)?,
                    &lex.lexicon,
                ));
            }
            let profile = if scores.is_empty() {
                None
            } else {
                Some(aggregate(&scores, &format!("lexicon:{}", lex.source))?)
            };
            Ok(Emotions {
                profile,
                source_sha256: lex.sha256,
                warnings: Vec::new(),
            })
        }
        EmotionBackend::Import => {
            let path = cfg.emotion_scores.as_deref().ok_or_else(|| {
                Error::Config("--emotion-backend import requires --emotion-scores <FILE>".into())
            })?;
            let imported = import_scores(path, segments.len())?;
            let profile = if imported.scores.is_empty() {
                None
            } else {
                Some(aggregate(
                    &imported.scores,
                    &format!("import:{}", imported.backend),
                )?)
            };
            Ok(Emotions {
                profile,
                source_sha256: imported.sha256,
                warnings: imported.warnings,
            })
        }
    }
}

/// Everything `analyze` produces.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: AnalysisReport,
    pub clean: CleanDocument,
    pub stream: TokenStream,
    /// `(file name, SVG document)` in [`CHART_FILES`] order.
    pub charts: Vec<(&'static str, String)>,
    /// Segment export, when requested.
    pub segments_json: Option<String>,
    /// Non-fatal diagnostics for the error stream.
    pub warnings: Vec<String>,
}

pub fn analyze(raw: &RawDocument, cfg: &RunConfig) -> Result<Analysis, Error> {
    let prepared = prepare(raw, cfg);
    let stream = &prepared.stream;
    let stoplist = load_stoplist(cfg)?;

    let segments = segment_stream(stream, cfg.segment_size)?;
    let frequency = word_frequencies(stream, &stoplist.words);
    let wordcloud = wordcloud_data(&frequency, cfg.wordcloud_top_n)?;
    let diversity = if stream.is_empty() {
        None
    } else {
        Some(lexical_diversity(stream, cfg.mattr_window, &segments)?)
    };
    let punctuation = punctuation_stats(&prepared.clean.content);
    let words = tracked_words(cfg, &frequency);
    let occ = occurrences(stream, &words, cfg)?;
    let motifs = motifs(&prepared, &cfg.motif)?;
    let emo = emotions(cfg, stream, &segments)?;

    let mut warnings = occ.warnings;
    warnings.extend(emo.warnings);

    let echo = ConfigEcho {
        token_mode: cfg.token_mode,
        segment_size: cfg.segment_size,
        cleaning: cfg.cleaning,
        stoplist_source: stoplist.source,
        stoplist_sha256: stoplist.sha256,
        top_n: cfg.top_n,
        mattr_window: cfg.mattr_window,
        k_clusters: cfg.k_clusters,
        cooc_window: cfg.cooc_window,
        track_words: words,
        motif: cfg.motif,
        emotion_backend: cfg.emotion_backend.as_str().into(),
        emotion_source_sha256: emo.source_sha256,
        pie: cfg.pie.as_str().into(),
        seed: cfg.seed,
    };
    let report = assemble(
        ModuleOutputs {
            input: prepared.input.clone(),
            frequency,
            wordcloud,
            diversity,
            punctuation,
            segments,
            tracks: occ.tracks,
            clusters: occ.clusters,
            repetition_forms: occ.forms,
            motifs,
            emotions: emo.profile,
        },
        echo,
    )?;

    let charts = charts(&report, cfg.pie)?;
    let segments_json = if cfg.export_segments {
        Some(export_segments(stream, &report.segments)?)
    } else {
        None
    };
    Ok(Analysis {
        report,
        clean: prepared.clean,
        stream: prepared.stream,
        charts,
        segments_json,
        warnings,
    })
}

/// Renders the four charts from a finished report.
pub fn charts(report: &AnalysisReport, pie: PieMode) -> Result<Vec<(&'static str, String)>, Error> {
    let n = report.input.token_count;
    let shares = match (&report.emotions, pie) {
        (Some(p), PieMode::Mean) => p.aggregate_mean.to_vec(),
        (Some(p), PieMode::Dominant) => p.dominant_shares().to_vec(),
        (None, _) => vec![0.0; EmotionLabel::ALL.len()],
    };
    let pie_title = match pie {
        PieMode::Mean => "Emotion distribution (mean segment scores)",
        PieMode::Dominant => "Emotion distribution (dominant label per segment)",
    };
    let gantt_rows = gantt_data(&report.tracks);
    let motif_rows = motif_chart_data(&report.motifs, n);
    let band_height = |rows: usize| (66 + 32 * rows).max(200) as u32;

    let specs = [
        ChartSpec::new(
            pie_title,
            560,
            420,
            ChartData::Pie {
                labels: EmotionLabel::ALL
                    .iter()
                    .map(|l| l.as_str().to_owned())
                    .collect(),
                shares,
            },
        ),
        ChartSpec::new(
            "Word occurrences",
            960,
            band_height(gantt_rows.len()),
            ChartData::GanttScatter {
                rows: gantt_rows,
                stream_length: n,
            },
        ),
        ChartSpec::new(
            "Longest repeated sequences",
            960,
            band_height(motif_rows.len()),
            ChartData::MotifBars {
                rows: motif_rows,
                stream_length: n,
            },
        ),
        ChartSpec::new(
            "Word cloud",
            800,
            500,
            ChartData::Wordcloud {
                words: report.wordcloud.clone(),
            },
        ),
    ];
    CHART_FILES
        .iter()
        .zip(specs.iter())
        .map(|(name, spec)| Ok((*name, render(spec)?)))
        .collect()
}
