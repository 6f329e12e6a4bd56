//! Seven-label emotion distributions per segment and their corpus aggregate.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::tokenize::{normalize_token, TokenMode};
use crate::Error;

pub const LABEL_COUNT: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmotionLabel {
    Anger,
    Disgust,
    Fear,
    Joy,
    Neutral,
    Sadness,
    Surprise,
}

impl EmotionLabel {
    /// Canonical order. Every score vector is indexed by this order.
    pub const ALL: [EmotionLabel; LABEL_COUNT] = [
        EmotionLabel::Anger,
        EmotionLabel::Disgust,
        EmotionLabel::Fear,
        EmotionLabel::Joy,
        EmotionLabel::Neutral,
        EmotionLabel::Sadness,
        EmotionLabel::Surprise,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EmotionLabel::Anger => "anger",
            EmotionLabel::Disgust => "disgust",
            EmotionLabel::Fear => "fear",
            EmotionLabel::Joy => "joy",
            EmotionLabel::Neutral => "neutral",
            EmotionLabel::Sadness => "sadness",
            EmotionLabel::Surprise => "surprise",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for EmotionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EmotionLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EmotionLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::UnknownLabel(String::from(s)))
    }
}

pub type ScoreVector = [f64; LABEL_COUNT];

/// Weight added to `neutral` before normalizing lexicon scores.
pub const NEUTRAL_SMOOTHING: f64 = 0.5;
/// Maximum deviation of a score sum from 1.
pub const SUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmotionScore {
    pub segment_index: usize,
    pub scores: ScoreVector,
}

impl EmotionScore {
    pub fn argmax(&self) -> EmotionLabel {
        argmax(&self.scores)
    }
}

/// Index of the largest entry; ties go to the earlier label.
pub fn argmax(v: &ScoreVector) -> EmotionLabel {
    let mut best = 0;
    for i in 1..LABEL_COUNT {
        if v[i] > v[best] {
            best = i;
        }
    }
    EmotionLabel::ALL[best]
}

/// Word to association weights, one weight per label in canonical order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Lexicon {
    entries: BTreeMap<String, ScoreVector>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds or replaces an entry; weights must be finite and non-negative.
    pub fn insert(&mut self, word: &str, weights: ScoreVector) -> Result<(), Error> {
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeight {
                word: String::from(word),
                label: EmotionLabel::ALL[i],
            });
        }
        self.entries
            .insert(normalize_token(word, TokenMode::Plain), weights);
        Ok(())
    }

    pub fn get(&self, norm: &str) -> Option<&ScoreVector> {
        self.entries.get(norm)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ScoreVector)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// Bag-of-words lexicon scoring with neutral smoothing.
pub fn score_lexicon(segment_index: usize, segment_text: &str, lexicon: &Lexicon) -> EmotionScore {
    let mut acc = [0.0; LABEL_COUNT];
    acc[EmotionLabel::Neutral.index()] = NEUTRAL_SMOOTHING;
    for word in segment_text.split_whitespace() {
        if let Some(w) = lexicon.get(&normalize_token(word, TokenMode::Plain)) {
            for (a, x) in acc.iter_mut().zip(w) {
                *a += x;
            }
        }
    }
    let total: f64 = acc.iter().sum();
    for a in &mut acc {
        *a /= total;
    }
    EmotionScore {
        segment_index,
        scores: acc,
    }
}

/// Outcome of validating an externally produced score vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validated {
    pub scores: ScoreVector,
    /// Sum before renormalization.
    pub original_sum: f64,
    /// True when the sum was off by more than [`SUM_TOLERANCE`].
    pub renormalized: bool,
}

/// Checks an imported score vector and rescales it to sum to 1.
pub fn validate_scores(segment_index: usize, scores: &ScoreVector) -> Result<Validated, Error> {
    if let Some(i) = scores.iter().position(|s| !s.is_finite() || *s < 0.0) {
        return Err(Error::InvalidScore {
            segment: segment_index,
            label: EmotionLabel::ALL[i],
        });
    }
    let sum: f64 = scores.iter().sum();
    if sum <= 0.0 {
        return Err(Error::ZeroScoreSum(segment_index));
    }
    let renormalized = (sum - 1.0).abs() > SUM_TOLERANCE;
    let mut out = *scores;
    if renormalized {
        for s in &mut out {
            *s /= sum;
        }
    }
    Ok(Validated {
        scores: out,
        original_sum: sum,
        renormalized,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmotionProfile {
    pub per_segment: Vec<EmotionScore>,
    pub aggregate_mean: ScoreVector,
    pub dominant_counts: [usize; LABEL_COUNT],
    pub backend_id: String,
}

impl EmotionProfile {
    /// Labels ordered by mean score, highest first; ties keep canonical order.
    pub fn ranking(&self) -> Vec<EmotionLabel> {
        let mut labels = EmotionLabel::ALL.to_vec();
        labels.sort_by(|a, b| {
            self.aggregate_mean[b.index()]
                .total_cmp(&self.aggregate_mean[a.index()])
                .then(a.cmp(b))
        });
        labels
    }

    /// Shares of segments per dominant label.
    pub fn dominant_shares(&self) -> ScoreVector {
        let n: usize = self.dominant_counts.iter().sum();
        let mut out = [0.0; LABEL_COUNT];
        if n > 0 {
            for (o, c) in out.iter_mut().zip(self.dominant_counts) {
                *o = c as f64 / n as f64;
            }
        }
        out
    }
}

/// Mean distribution and argmax counts. Segments are reduced in index order.
pub fn aggregate(per_segment: &[EmotionScore], backend_id: &str) -> Result<EmotionProfile, Error> {
    if per_segment.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let mut sorted: Vec<EmotionScore> = per_segment.to_vec();
    sorted.sort_by_key(|s| s.segment_index);

    let mut sum = [0.0; LABEL_COUNT];
    let mut dominant_counts = [0usize; LABEL_COUNT];
    for s in &sorted {
        for (acc, x) in sum.iter_mut().zip(s.scores) {
            *acc += x;
        }
        dominant_counts[s.argmax().index()] += 1;
    }
    let n = sorted.len() as f64;
    let aggregate_mean = sum.map(|x| x / n);
    Ok(EmotionProfile {
        per_segment: sorted,
        aggregate_mean,
        dominant_counts,
        backend_id: String::from(backend_id),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn one_hot(i: usize) -> ScoreVector {
        let mut v = [0.0; LABEL_COUNT];
        v[i] = 1.0;
        v
    }

    #[test]
    fn no_hits_is_neutral() {
        let s = score_lexicon(0, "nothing here", &Lexicon::new());
        assert_eq!(s.scores, one_hot(EmotionLabel::Neutral.index()));
    }

    #[test]
    fn single_sad_word() {
        let mut lex = Lexicon::new();
        lex.insert("dead", one_hot(EmotionLabel::Sadness.index()))
            .unwrap();
        let s = score_lexicon(0, "dead", &lex);
        assert!((s.scores[5] - 2.0 / 3.0).abs() < 1e-9);
        assert!((s.scores[4] - 1.0 / 3.0).abs() < 1e-9);
        assert_eq!(s.argmax(), EmotionLabel::Sadness);
    }

    #[test]
    fn lexicon_matches_plain_norm() {
        let mut lex = Lexicon::new();
        lex.insert("Dead", one_hot(5)).unwrap();
        let s = score_lexicon(0, "DEAD...", &lex);
        assert_eq!(s.argmax(), EmotionLabel::Sadness);
    }

    #[test]
    fn negative_weight_rejected() {
        let mut lex = Lexicon::new();
        let mut w = one_hot(0);
        w[3] = -0.1;
        assert_eq!(
            lex.insert("x", w),
            Err(Error::InvalidWeight {
                word: "x".into(),
                label: EmotionLabel::Joy
            })
        );
    }

    #[test]
    fn aggregate_two_segments() {
        let p = aggregate(
            &[
                EmotionScore {
                    segment_index: 0,
                    scores: one_hot(0),
                },
                EmotionScore {
                    segment_index: 1,
                    scores: one_hot(1),
                },
            ],
            "test",
        )
        .unwrap();
        assert_eq!(p.aggregate_mean, [0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(p.dominant_counts, [1, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn aggregate_one_segment_is_identity() {
        let v = [0.1, 0.2, 0.05, 0.05, 0.3, 0.2, 0.1];
        let p = aggregate(
            &[EmotionScore {
                segment_index: 0,
                scores: v,
            }],
            "t",
        )
        .unwrap();
        assert_eq!(p.aggregate_mean, v);
        assert_eq!(aggregate(&[], "t"), Err(Error::EmptyProfile));
    }

    #[test]
    fn argmax_ties_take_label_order() {
        assert_eq!(
            argmax(&[0.0, 0.5, 0.0, 0.0, 0.5, 0.0, 0.0]),
            EmotionLabel::Disgust
        );
    }

    #[test]
    fn validation() {
        let v = validate_scores(0, &[0.2, 0.2, 0.2, 0.2, 0.2, 0.0, 0.0004]).unwrap();
        assert!(v.renormalized);
        assert!((v.scores.iter().sum::<f64>() - 1.0).abs() < 1e-9);

        let v = validate_scores(0, &one_hot(2)).unwrap();
        assert!(!v.renormalized);

        let mut bad = one_hot(0);
        bad[6] = -1e-3;
        assert!(matches!(
            validate_scores(3, &bad),
            Err(Error::InvalidScore { segment: 3, .. })
        ));
        assert_eq!(validate_scores(1, &[0.0; 7]), Err(Error::ZeroScoreSum(1)));
    }

    #[test]
    fn label_parse() {
        for l in EmotionLabel::ALL {
            assert_eq!(l.as_str().parse::<EmotionLabel>().unwrap(), l);
        }
        assert!("joyful".parse::<EmotionLabel>().is_err());
        let names: Vec<_> = EmotionLabel::ALL.iter().map(|l| l.as_str()).collect();
        assert_eq!(
            names,
            vec!["anger", "disgust", "fear", "joy", "neutral", "sadness", "surprise"]
        );
    }
}
