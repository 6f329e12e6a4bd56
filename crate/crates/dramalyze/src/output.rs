//! Report, table and chart files, and the text printed by the single-analysis
//! subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use dramalyze_core::emotion::{EmotionLabel, EmotionProfile};
use dramalyze_core::{AnalysisReport, FrequencyTable, Motif, OccurrenceTrack};
use serde::Serialize;

use crate::pipeline::Analysis;
use crate::Error;

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    write(&mut w).expect("writing to memory cannot fail");
    let bytes = w.into_inner().expect("flushing to memory cannot fail");
    String::from_utf8(bytes).expect("csv of UTF-8 fields is UTF-8")
}

/// `rank,word,count`, at most `limit` rows.
pub fn frequency_csv(table: &FrequencyTable, limit: usize) -> String {
    csv_string(|w| {
        w.write_record(["rank", "word", "count"])?;
        for e in table.top(limit) {
            w.write_record([e.rank.to_string(), e.norm.clone(), e.count.to_string()])?;
        }
        Ok(())
    })
}

/// `word,position`, one row per occurrence.
pub fn occurrences_csv(tracks: &[OccurrenceTrack]) -> String {
    csv_string(|w| {
        w.write_record(["word", "position"])?;
        for t in tracks {
            for p in &t.positions {
                w.write_record([t.norm.as_str(), &p.to_string()])?;
            }
        }
        Ok(())
    })
}

/// `rank,display,length,count,occurrences` with space-separated occurrences.
pub fn motifs_csv(motifs: &[Motif]) -> String {
    csv_string(|w| {
        w.write_record(["rank", "display", "length", "count", "occurrences"])?;
        for (i, m) in motifs.iter().enumerate() {
            let occ: Vec<String> = m.occurrences.iter().map(usize::to_string).collect();
            w.write_record([
                (i + 1).to_string(),
                m.display.clone(),
                m.length.to_string(),
                m.count.to_string(),
                occ.join(" "),
            ])?;
        }
        Ok(())
    })
}

#[derive(Serialize)]
struct MotifJson<'a> {
    display: &'a str,
    length: usize,
    count: usize,
    occurrences: &'a [usize],
}

/// JSON list of `{display, length, count, occurrences}`.
pub fn motifs_json(motifs: &[Motif]) -> String {
    let rows: Vec<MotifJson> = motifs
        .iter()
        .map(|m| MotifJson {
            display: &m.display,
            length: m.length,
            count: m.count,
            occurrences: &m.occurrences,
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("plain data serializes");
    s.push('\n');
    s
}

/// `segment,<7 labels>,dominant`, one row per segment.
pub fn emotions_csv(profile: Option<&EmotionProfile>) -> String {
    csv_string(|w| {
        let mut header = vec!["segment"];
        header.extend(EmotionLabel::ALL.iter().map(|l| l.as_str()));
        header.push("dominant");
        w.write_record(&header)?;
        for s in profile.map_or(&[][..], |p| &p.per_segment) {
            let mut row = vec![s.segment_index.to_string()];
            row.extend(s.scores.iter().map(f64::to_string));
            row.push(s.argmax().as_str().to_owned());
            w.write_record(&row)?;
        }
        Ok(())
    })
}

/// `label,mean,dominant_count`, one row per label in canonical order.
pub fn emotion_summary_csv(profile: Option<&EmotionProfile>) -> String {
    csv_string(|w| {
        w.write_record(["label", "mean", "dominant_count"])?;
        if let Some(p) = profile {
            for l in EmotionLabel::ALL {
                w.write_record([
                    l.as_str().to_owned(),
                    p.aggregate_mean[l.index()].to_string(),
                    p.dominant_counts[l.index()].to_string(),
                ])?;
            }
        }
        Ok(())
    })
}

/// `segment,start,end,token_count,ttr`.
pub fn diversity_csv(report: &AnalysisReport) -> String {
    csv_string(|w| {
        w.write_record(["segment", "start", "end", "token_count", "ttr"])?;
        if let Some(d) = &report.diversity {
            for (s, ttr) in report.segments.iter().zip(&d.per_segment_ttr) {
                w.write_record([
                    s.index.to_string(),
                    s.start.to_string(),
                    s.end.to_string(),
                    s.token_count.to_string(),
                    ttr.to_string(),
                ])?;
            }
        }
        Ok(())
    })
}

/// `mark,count`.
pub fn punctuation_csv(report: &AnalysisReport) -> String {
    csv_string(|w| {
        w.write_record(["mark", "count"])?;
        for (mark, count) in &report.punctuation.counts {
            w.write_record([mark.as_str(), &count.to_string()])?;
        }
        Ok(())
    })
}

/// `word,occurrences,start,middle,end,burstiness,top_neighbor,top_pmi`.
pub fn repetition_csv(report: &AnalysisReport) -> String {
    csv_string(|w| {
        w.write_record([
            "word",
            "occurrences",
            "start",
            "middle",
            "end",
            "burstiness",
            "top_neighbor",
            "top_pmi",
        ])?;
        for f in &report.repetition_forms {
            let top = f.associative.first();
            w.write_record([
                f.norm.clone(),
                f.occurrences.to_string(),
                f.positional.start.to_string(),
                f.positional.middle.to_string(),
                f.positional.end.to_string(),
                f.aggregative_burstiness
                    .map_or(String::new(), |b| b.to_string()),
                top.map_or(String::new(), |a| a.neighbor.clone()),
                top.map_or(String::new(), |a| a.pmi.to_string()),
            ])?;
        }
        Ok(())
    })
}

/// Pretty JSON with a trailing newline.
pub fn report_json(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn write_file(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> Result<(), Error> {
    fs::write(&path, contents).map_err(|source| Error::Write {
        path: path.clone(),
        source,
    })?;
    written.push(path);
    Ok(())
}

/// Writes report.json, tables/*.csv, the four SVGs and, if present,
/// segments.json under `dir`. Returns the written paths.
pub fn write_analysis(dir: &Path, analysis: &Analysis) -> Result<Vec<PathBuf>, Error> {
    let tables = dir.join("tables");
    fs::create_dir_all(&tables).map_err(|source| Error::Write {
        path: tables.clone(),
        source,
    })?;
    let r = &analysis.report;
    let mut written = Vec::new();
    write_file(dir.join("report.json"), &report_json(r), &mut written)?;
    let table_files = [
        ("frequency.csv", frequency_csv(&r.frequency, usize::MAX)),
        ("occurrences.csv", occurrences_csv(&r.tracks)),
        ("motifs.csv", motifs_csv(&r.motifs)),
        ("emotions.csv", emotions_csv(r.emotions.as_ref())),
        (
            "emotion_summary.csv",
            emotion_summary_csv(r.emotions.as_ref()),
        ),
        ("diversity.csv", diversity_csv(r)),
        ("punctuation.csv", punctuation_csv(r)),
        ("repetition.csv", repetition_csv(r)),
    ];
    for (name, body) in &table_files {
        write_file(tables.join(name), body, &mut written)?;
    }
    for (name, svg) in &analysis.charts {
        write_file(dir.join(name), svg, &mut written)?;
    }
    if let Some(seg) = &analysis.segments_json {
        write_file(dir.join("segments.json"), seg, &mut written)?;
    }
    Ok(written)
}
