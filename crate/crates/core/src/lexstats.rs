//! Word frequencies, lexical diversity, punctuation counts and word-cloud weights.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::segment::Segment;
use crate::tokenize::TokenStream;
use crate::Error;

pub const DEFAULT_MATTR_WINDOW: usize = 50;
pub const DEFAULT_TOP_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyEntry {
    pub norm: String,
    pub count: usize,
    pub rank: usize,
}

/// Counts of non-stopword norms. Ordered by count descending, ties by norm ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub entries: Vec<FrequencyEntry>,
    pub total_counted: usize,
}

impl FrequencyTable {
    pub fn top(&self, n: usize) -> &[FrequencyEntry] {
        &self.entries[..n.min(self.entries.len())]
    }

    pub fn count_of(&self, norm: &str) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.norm == norm)
            .map(|e| e.count)
    }

    /// Builds a ranked table from arbitrary `(norm, count)` pairs.
    pub fn from_counts<I, S>(counts: I) -> Self
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut pairs: Vec<(String, usize)> = counts
            .into_iter()
            .map(|(s, c)| (s.into(), c))
            .filter(|(_, c)| *c > 0)
            .collect();
        pairs.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let total_counted = pairs.iter().map(|p| p.1).sum();
        let entries = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (norm, count))| FrequencyEntry {
                norm,
                count,
                rank: i + 1,
            })
            .collect();
        Self {
            entries,
            total_counted,
        }
    }
}

pub fn word_frequencies(stream: &TokenStream, stopwords: &BTreeSet<String>) -> FrequencyTable {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for norm in stream.norms() {
        if !stopwords.contains(norm) {
            *counts.entry(norm).or_default() += 1;
        }
    }
    FrequencyTable::from_counts(counts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiversityReport {
    pub ttr: f64,
    pub mattr: f64,
    pub window: usize,
    pub per_segment_ttr: Vec<f64>,
}

/// Dense ids for the norms of a stream, assigned in first-seen order.
fn dense_ids(stream: &TokenStream) -> (Vec<usize>, usize) {
    let mut table: BTreeMap<&str, usize> = BTreeMap::new();
    let ids = stream
        .norms()
        .map(|n| {
            let next = table.len();
            *table.entry(n).or_insert(next)
        })
        .collect();
    (ids, table.len())
}

/// Plain TTR, moving-average TTR over `window`, and TTR per segment.
pub fn lexical_diversity(
    stream: &TokenStream,
    window: usize,
    segments: &[Segment],
) -> Result<DiversityReport, Error> {
    if stream.is_empty() {
        return Err(Error::EmptyDiversity);
    }
    if window == 0 {
        return Err(Error::ZeroWindow);
    }
    let (ids, types) = dense_ids(stream);
    let n = ids.len();
    let ttr = types as f64 / n as f64;

    let mattr = if n < window {
        ttr
    } else {
        let mut counts = vec![0usize; types];
        let mut distinct = 0usize;
        for &id in &ids[..window] {
            if counts[id] == 0 {
                distinct += 1;
            }
            counts[id] += 1;
        }
        let mut distinct_sum = distinct as u128;
        for i in window..n {
            let out = ids[i - window];
            counts[out] -= 1;
            if counts[out] == 0 {
                distinct -= 1;
            }
            let inc = ids[i];
            if counts[inc] == 0 {
                distinct += 1;
            }
            counts[inc] += 1;
            distinct_sum += distinct as u128;
        }
        let windows = (n - window + 1) as f64;
        distinct_sum as f64 / (window as f64 * windows)
    };

    let mut per_segment_ttr = Vec::with_capacity(segments.len());
    let mut seen = vec![usize::MAX; types];
    for (si, seg) in segments.iter().enumerate() {
        if seg.end > n || seg.start >= seg.end {
            return Err(Error::SegmentOutOfBounds {
                start: seg.start,
                end: seg.end,
                len: n,
            });
        }
        let mut distinct = 0usize;
        for &id in &ids[seg.start..seg.end] {
            if seen[id] != si {
                seen[id] = si;
                distinct += 1;
            }
        }
        per_segment_ttr.push(distinct as f64 / seg.token_count as f64);
    }

    Ok(DiversityReport {
        ttr,
        mattr,
        window,
        per_segment_ttr,
    })
}

pub const PUNCTUATION_MARKS: [&str; 6] = [".", "?", "!", "...", "\u{2014}", ","];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PunctuationStats {
    pub counts: BTreeMap<String, usize>,
    pub terminal_mark: Option<String>,
}

impl PunctuationStats {
    pub fn count(&self, mark: &str) -> usize {
        self.counts.get(mark).copied().unwrap_or(0)
    }
}

/// Counts `. ? ! ... — ,`. Three consecutive periods are one ellipsis, not three periods.
pub fn punctuation_stats(text: &str) -> PunctuationStats {
    let mut counts: BTreeMap<String, usize> = PUNCTUATION_MARKS
        .iter()
        .map(|m| (String::from(*m), 0))
        .collect();
    let mut bump = |m: &str| *counts.get_mut(m).expect("fixed mark set") += 1;

    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            '.' if chars.get(i + 1) == Some(&'.') && chars.get(i + 2) == Some(&'.') => {
                bump("...");
                i += 3;
                continue;
            }
            '.' => bump("."),
            '?' => bump("?"),
            '!' => bump("!"),
            ',' => bump(","),
            '\u{2014}' => bump("\u{2014}"),
            _ => {}
        }
        i += 1;
    }

    let trimmed = text.trim_end();
    let terminal_mark = trimmed.chars().next_back().map(|c| {
        if trimmed.ends_with("...") {
            String::from("...")
        } else {
            let mut s = String::new();
            s.push(c);
            s
        }
    });
    PunctuationStats {
        counts,
        terminal_mark,
    }
}

/// `(norm, count / max_count)` for the `top_n` most frequent entries.
pub fn wordcloud_data(table: &FrequencyTable, top_n: usize) -> Result<Vec<(String, f64)>, Error> {
    if top_n == 0 {
        return Err(Error::ZeroTopN);
    }
    let Some(first) = table.entries.first() else {
        return Ok(Vec::new());
    };
    let max = first.count as f64;
    Ok(table
        .top(top_n)
        .iter()
        .map(|e| (e.norm.clone(), e.count as f64 / max))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::segment_len;
    use crate::tokenize::{tokenize_str, TokenMode};

    fn stream(s: &str) -> TokenStream {
        tokenize_str(s, TokenMode::Plain)
    }

    #[test]
    fn simple_counts() {
        let t = word_frequencies(&stream("a b a"), &BTreeSet::new());
        assert_eq!(
            t.entries,
            [
                FrequencyEntry {
                    norm: "a".into(),
                    count: 2,
                    rank: 1
                },
                FrequencyEntry {
                    norm: "b".into(),
                    count: 1,
                    rank: 2
                },
            ]
        );
        assert_eq!(t.total_counted, 3);
    }

    #[test]
    fn stopwords_filtered_and_ties_lexicographic() {
        let stop: BTreeSet<String> = ["the".into()].into_iter().collect();
        let t = word_frequencies(&stream("the zed the ant the zed ant"), &stop);
        let got: Vec<_> = t
            .entries
            .iter()
            .map(|e| (e.norm.as_str(), e.count))
            .collect();
        assert_eq!(got, [("ant", 2), ("zed", 2)]);
        assert_eq!(t.total_counted, 4);
    }

    #[test]
    fn ttr_extremes() {
        let s = stream("a b c d e f g h i j");
        let segs = segment_len(s.len(), 30).unwrap();
        assert_eq!(lexical_diversity(&s, 50, &segs).unwrap().ttr, 1.0);
        let s = stream("x x x x x x x x x x");
        let d = lexical_diversity(&s, 50, &segs).unwrap();
        assert!((d.ttr - 0.1).abs() < 1e-15);
        assert_eq!(d.mattr, d.ttr);
        assert_eq!(d.per_segment_ttr.len(), 1);
    }

    #[test]
    fn diversity_errors() {
        assert_eq!(
            lexical_diversity(&stream(""), 5, &[]),
            Err(Error::EmptyDiversity)
        );
        assert_eq!(
            lexical_diversity(&stream("a"), 0, &[]),
            Err(Error::ZeroWindow)
        );
    }

    #[test]
    fn mattr_small_window() {
        // windows of 2 over a a b b: {a},{a,b},{b} -> (1/2 + 1 + 1/2)/3
        let d = lexical_diversity(&stream("a a b b"), 2, &[]).unwrap();
        assert!((d.mattr - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn per_segment() {
        let s = stream("a a b c c c");
        let segs = segment_len(s.len(), 4).unwrap();
        let d = lexical_diversity(&s, 3, &segs).unwrap();
        assert_eq!(d.per_segment_ttr, [0.75, 0.5]);
    }

    #[test]
    fn punctuation_counts() {
        let p = punctuation_stats("what?... who?...");
        assert_eq!(p.count("?"), 2);
        assert_eq!(p.count("..."), 2);
        assert_eq!(p.count("."), 0);
        assert_eq!(p.terminal_mark.as_deref(), Some("..."));

        let p = punctuation_stats("");
        assert!(p.counts.values().all(|&c| c == 0));
        assert_eq!(p.terminal_mark, None);

        let p = punctuation_stats("no. no.... oh, up\u{2014}  ");
        assert_eq!(p.count("."), 2);
        assert_eq!(p.count("..."), 1);
        assert_eq!(p.count(","), 1);
        assert_eq!(p.count("\u{2014}"), 1);
        assert_eq!(p.terminal_mark.as_deref(), Some("\u{2014}"));
    }

    #[test]
    fn wordcloud_weights() {
        let t = FrequencyTable::from_counts([("time", 17), ("oh", 10)]);
        let w = wordcloud_data(&t, 2).unwrap();
        assert_eq!(w[0], ("time".into(), 1.0));
        assert_eq!(w[1], ("oh".into(), 10.0 / 17.0));

        let t = FrequencyTable::from_counts([("only", 3)]);
        assert_eq!(wordcloud_data(&t, 5).unwrap(), [("only".into(), 1.0)]);
        assert!(wordcloud_data(&FrequencyTable::default(), 3)
            .unwrap()
            .is_empty());
        assert_eq!(wordcloud_data(&t, 0), Err(Error::ZeroTopN));
    }
}
