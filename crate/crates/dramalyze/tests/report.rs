mod support;

use dramalyze::config::{EmotionBackend, RunConfig};
use dramalyze::io::load_document;
use dramalyze::output::{report_json, write_analysis};
use dramalyze::pipeline::{analyze, CHART_FILES};
use dramalyze_core::report::AnalysisReport;
use dramalyze_core::textio::RawDocument;
use serde_json::{json, Value};
use support::{report_schema, sample_path, schema_errors};

fn report_for(text: &str) -> AnalysisReport {
    let raw = RawDocument::new("mem.txt", text.to_owned());
    analyze(&raw, &RunConfig::new("mem.txt")).unwrap().report
}

fn as_value(report: &AnalysisReport) -> Value {
    serde_json::from_str(&report_json(report)).unwrap()
}

#[test]
fn minimal_report_conforms_to_schema() {
    let report = report_for("lamp out. lamp out she said.");
    assert_eq!(report.input.token_count, 6);
    let errors = schema_errors(&report_schema(), &as_value(&report));
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn empty_input_report_conforms_to_schema() {
    let report = report_for("");
    assert!(report.diversity.is_none() && report.emotions.is_none() && report.clusters.is_none());
    let errors = schema_errors(&report_schema(), &as_value(&report));
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn sample_report_conforms_to_schema() {
    let raw = load_document(&sample_path()).unwrap();
    let report = analyze(&raw, &RunConfig::new(sample_path()))
        .unwrap()
        .report;
    let errors = schema_errors(&report_schema(), &as_value(&report));
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn imported_scores_report_conforms_to_schema() {
    let raw = load_document(&sample_path()).unwrap();
    let mut cfg = RunConfig::new(sample_path());
    cfg.emotion_backend = EmotionBackend::Import;
    cfg.emotion_scores = Some(support::fixture("sample-scores.json"));
    let analysis = analyze(&raw, &cfg).unwrap();
    assert!(analysis.warnings.is_empty(), "{:?}", analysis.warnings);
    let profile = analysis.report.emotions.as_ref().unwrap();
    assert_eq!(profile.backend_id, "import:synthetic:fixture-v1");
    assert_eq!(analysis.report.config_echo.emotion_backend, "import");
    let errors = schema_errors(&report_schema(), &as_value(&analysis.report));
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn schema_checker_catches_violations() {
    let schema = report_schema();
    let good = as_value(&report_for("a b a b c"));
    let mut cases: Vec<(Value, &str)> = Vec::new();

    let mut v = good.clone();
    v["schema_version"] = json!("2.0.0");
    cases.push((v, "/schema_version"));
    let mut v = good.clone();
    v.as_object_mut().unwrap().remove("motifs");
    cases.push((v, "missing required motifs"));
    let mut v = good.clone();
    v["extra"] = json!(1);
    cases.push((v, "/extra"));
    let mut v = good.clone();
    v["config_echo"]["token_mode"] = json!("spacy");
    cases.push((v, "/config_echo/token_mode"));
    let mut v = good.clone();
    v["emotions"]["aggregate_mean"] = json!([0.5, 0.5]);
    cases.push((v, "/emotions"));
    let mut v = good.clone();
    v["frequency"]["entries"][0]["count"] = json!(-1);
    cases.push((v, "/frequency/entries/0/count"));
    let mut v = good.clone();
    v["wordcloud"][0] = json!(["x", 1.0, 2]);
    cases.push((v, "/wordcloud/0"));

    for (value, needle) in cases {
        let errors = schema_errors(&schema, &value);
        assert!(
            errors.iter().any(|e| e.contains(needle)),
            "{needle}: {errors:?}"
        );
    }
}

#[test]
fn serialization_round_trips_byte_for_byte() {
    let raw = load_document(&sample_path()).unwrap();
    let report = analyze(&raw, &RunConfig::new(sample_path()))
        .unwrap()
        .report;
    let first = report_json(&report);
    let parsed: AnalysisReport = serde_json::from_str(&first).unwrap();
    assert_eq!(parsed, report);
    assert_eq!(report_json(&parsed), first);
    parsed.validate().unwrap();
}

#[test]
fn tampered_motif_occurrence_is_named() {
    let mut report = report_for("a b c a b c d a b c");
    let n = report.input.token_count;
    assert!(!report.motifs.is_empty());
    let last = report.motifs[0].occurrences.len() - 1;
    report.motifs[0].occurrences[last] = n;
    let err = report.validate().unwrap_err().to_string();
    assert!(
        err.contains(&format!("motifs[0].occurrences[{last}]")),
        "{err}"
    );
}

#[test]
fn other_tampering_is_detected() {
    let base = report_for("lamp salt rope. lamp salt rope. bell tide");
    let mut r = base.clone();
    r.frequency.total_counted += 1;
    assert!(r
        .validate()
        .unwrap_err()
        .to_string()
        .contains("frequency.total_counted"));
    let mut r = base.clone();
    r.segments[0].end += 1;
    assert!(r
        .validate()
        .unwrap_err()
        .to_string()
        .contains("segments[0]"));
    let mut r = base.clone();
    r.tracks[0].positions.push(10_000);
    assert!(r
        .validate()
        .unwrap_err()
        .to_string()
        .contains("tracks[0].positions"));
    let mut r = base.clone();
    r.emotions.as_mut().unwrap().per_segment[0].scores[0] += 0.5;
    assert!(r
        .validate()
        .unwrap_err()
        .to_string()
        .contains("emotions.per_segment[0]"));
    let mut r = base;
    r.schema_version = "0.9".into();
    assert!(r
        .validate()
        .unwrap_err()
        .to_string()
        .contains("schema_version"));
}

#[test]
fn config_echo_carries_every_parameter() {
    let raw = RawDocument::new("mem.txt", "alpha beta gamma alpha beta".to_owned());
    let mut cfg = RunConfig::new("mem.txt");
    cfg.segment_size = 2;
    cfg.k_clusters = 2;
    cfg.cooc_window = 3;
    cfg.mattr_window = 4;
    cfg.seed = 99;
    let echo = analyze(&raw, &cfg).unwrap().report.config_echo;
    assert_eq!(
        (
            echo.segment_size,
            echo.k_clusters,
            echo.cooc_window,
            echo.mattr_window,
            echo.seed
        ),
        (2, 2, 3, 4, 99)
    );
    assert_eq!(echo.stoplist_sha256.len(), 64);
    assert_eq!(echo.emotion_source_sha256.len(), 64);
    assert_eq!(echo.token_mode.as_str(), "plain");
}

#[test]
fn written_outputs_are_complete() {
    let dir = tempfile::tempdir().unwrap();
    let raw = load_document(&sample_path()).unwrap();
    let mut cfg = RunConfig::new(sample_path());
    cfg.export_segments = true;
    let analysis = analyze(&raw, &cfg).unwrap();
    write_analysis(dir.path(), &analysis).unwrap();
    assert!(dir.path().join("report.json").is_file());
    for chart in CHART_FILES {
        let svg = std::fs::read_to_string(dir.path().join(chart)).unwrap();
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    }
    for table in [
        "frequency",
        "occurrences",
        "motifs",
        "emotions",
        "emotion_summary",
        "diversity",
        "punctuation",
        "repetition",
    ] {
        assert!(
            dir.path()
                .join("tables")
                .join(format!("{table}.csv"))
                .is_file(),
            "{table}"
        );
    }
    let freq = std::fs::read_to_string(dir.path().join("tables/frequency.csv")).unwrap();
    assert!(freq.starts_with("rank,word,count\n"));
    let seg: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("segments.json")).unwrap())
            .unwrap();
    assert_eq!(
        seg["segments"].as_array().unwrap().len(),
        analysis.report.segments.len()
    );
}
