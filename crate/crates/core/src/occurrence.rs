//! Occurrence tracks, 1-D clustering of pooled positions into implicit acts,
//! and positional / associative / aggregative repetition metrics.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::tokenize::{positions_in_fragment, TokenStream};
use crate::Error;

pub const DEFAULT_K_CLUSTERS: usize = 3;
pub const DEFAULT_COOC_WINDOW: usize = 5;
pub const MAX_LLOYD_ITERATIONS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccurrenceTrack {
    pub norm: String,
    pub positions: Vec<usize>,
}

pub fn track_word(stream: &TokenStream, norm: &str) -> OccurrenceTrack {
    OccurrenceTrack {
        norm: String::from(norm),
        positions: stream
            .tokens
            .iter()
            .filter(|t| t.norm == norm)
            .map(|t| t.index)
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterAssignment {
    pub k: usize,
    /// Pooled, sorted positions of every input track.
    pub positions: Vec<usize>,
    pub centroids: Vec<f64>,
    pub labels: Vec<usize>,
    pub boundaries: Vec<f64>,
    pub iterations: usize,
    /// Within-cluster sum of squares of the final assignment.
    pub wcss: f64,
}

impl ClusterAssignment {
    /// Cluster id of an arbitrary token index, by the boundary table.
    pub fn cluster_of(&self, position: usize) -> usize {
        let p = position as f64;
        self.boundaries.iter().take_while(|b| p > **b).count()
    }

    /// Per-track counts of occurrences falling into each cluster.
    pub fn membership(&self, tracks: &[OccurrenceTrack]) -> Vec<TrackMembership> {
        tracks
            .iter()
            .map(|t| {
                let mut counts = vec![0usize; self.k];
                for &p in &t.positions {
                    counts[self.cluster_of(p)] += 1;
                }
                TrackMembership {
                    norm: t.norm.clone(),
                    counts,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackMembership {
    pub norm: String,
    pub counts: Vec<usize>,
}

impl TrackMembership {
    /// Cluster holding the most occurrences; ties go to the lower id.
    pub fn majority(&self) -> Option<usize> {
        let max = *self.counts.iter().max()?;
        if max == 0 {
            return None;
        }
        self.counts.iter().position(|&c| c == max)
    }
}

/// 1-D k-means over the pooled positions of `tracks`.
pub fn cluster_positions(
    tracks: &[OccurrenceTrack],
    k: usize,
    seed: u64,
) -> Result<ClusterAssignment, Error> {
    cluster_positions_traced(tracks, k, seed).map(|(a, _)| a)
}

/// Like [`cluster_positions`], also returning the within-cluster sum of
/// squares after every Lloyd iteration (the first entry is for the seeding).
pub fn cluster_positions_traced(
    tracks: &[OccurrenceTrack],
    k: usize,
    seed: u64,
) -> Result<(ClusterAssignment, Vec<f64>), Error> {
    let mut positions: Vec<usize> = tracks
        .iter()
        .flat_map(|t| t.positions.iter().copied())
        .collect();
    positions.sort_unstable();
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if positions.len() < k {
        return Err(Error::KExceedsOccurrences {
            k,
            occurrences: positions.len(),
        });
    }
    let points: Vec<f64> = positions.iter().map(|&p| p as f64).collect();

    let mut centroids = quantile_seeds(&positions, k, seed);
    let mut labels = assign(&points, &centroids);
    let mut trace = vec![wcss(&points, &labels, &centroids)];
    let mut iterations = 0;
    while iterations < MAX_LLOYD_ITERATIONS {
        iterations += 1;
        update_centroids(&positions, &labels, &mut centroids);
        let next = assign(&points, &centroids);
        trace.push(wcss(&points, &next, &centroids));
        if next == labels {
            break;
        }
        labels = next;
    }

    // relabel by ascending centroid so ids read left to right
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| centroids[a].total_cmp(&centroids[b]).then(a.cmp(&b)));
    let mut remap = vec![0; k];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    let centroids: Vec<f64> = order.iter().map(|&i| centroids[i]).collect();
    let labels: Vec<usize> = labels.iter().map(|&l| remap[l]).collect();
    let boundaries = boundaries(&positions, &labels, &centroids);
    let wcss = *trace.last().expect("at least one entry");

    Ok((
        ClusterAssignment {
            k,
            positions,
            centroids,
            labels,
            boundaries,
            iterations,
            wcss,
        },
        trace,
    ))
}

/// Seeds at the `(i + 0.5) / k` quantiles. Coinciding seeds are moved to
/// unused distinct values, chosen with `seed`.
fn quantile_seeds(sorted: &[usize], k: usize, seed: u64) -> Vec<f64> {
    let n = sorted.len();
    let mut picks: Vec<usize> = (0..k)
        .map(|i| {
            let q = (2 * i + 1) as f64 / (2 * k) as f64;
            sorted[((q * n as f64) as usize).min(n - 1)]
        })
        .collect();

    let mut distinct: Vec<usize> = sorted.to_vec();
    distinct.dedup();
    if distinct.len() >= k {
        let mut rng = SplitMix64(seed);
        let mut used: Vec<usize> = Vec::with_capacity(k);
        for slot in 0..k {
            if used.contains(&picks[slot]) {
                let free: Vec<usize> = distinct
                    .iter()
                    .copied()
                    .filter(|v| !used.contains(v) && !picks[slot + 1..].contains(v))
                    .collect();
                let free = if free.is_empty() {
                    distinct
                        .iter()
                        .copied()
                        .filter(|v| !used.contains(v))
                        .collect()
                } else {
                    free
                };
                picks[slot] = free[(rng.next() % free.len() as u64) as usize];
            }
            used.push(picks[slot]);
        }
        picks.sort_unstable();
    }
    picks.into_iter().map(|p| p as f64).collect()
}

fn assign(points: &[f64], centroids: &[f64]) -> Vec<usize> {
    points
        .iter()
        .map(|&x| {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (j, &c) in centroids.iter().enumerate() {
                let d = (x - c) * (x - c);
                if d < best_d {
                    best_d = d;
                    best = j;
                }
            }
            best
        })
        .collect()
}

/// Means of each cluster; an empty cluster keeps its previous centroid.
fn update_centroids(positions: &[usize], labels: &[usize], centroids: &mut [f64]) {
    let k = centroids.len();
    let mut sums = vec![0u128; k];
    let mut counts = vec![0usize; k];
    for (&p, &l) in positions.iter().zip(labels) {
        sums[l] += p as u128;
        counts[l] += 1;
    }
    for j in 0..k {
        if counts[j] > 0 {
            centroids[j] = sums[j] as f64 / counts[j] as f64;
        }
    }
}

pub(crate) fn wcss(points: &[f64], labels: &[usize], centroids: &[f64]) -> f64 {
    points
        .iter()
        .zip(labels)
        .map(|(&x, &l)| (x - centroids[l]) * (x - centroids[l]))
        .sum()
}

fn boundaries(positions: &[usize], labels: &[usize], centroids: &[f64]) -> Vec<f64> {
    let k = centroids.len();
    let mut lo = vec![usize::MAX; k];
    let mut hi = vec![0usize; k];
    let mut seen = vec![false; k];
    for (&p, &l) in positions.iter().zip(labels) {
        lo[l] = lo[l].min(p);
        hi[l] = hi[l].max(p);
        seen[l] = true;
    }
    (0..k.saturating_sub(1))
        .map(|j| {
            if seen[j] && seen[j + 1] {
                (hi[j] as f64 + lo[j + 1] as f64) / 2.0
            } else {
                (centroids[j] + centroids[j + 1]) / 2.0
            }
        })
        .collect()
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Shares of a word's occurrences at the start `[0, 1/3)`, middle `[1/3, 2/3)`
/// and end `[2/3, 1]` of their fragments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositionalHistogram {
    pub start: f64,
    pub middle: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Association {
    pub neighbor: String,
    pub pmi: f64,
    pub joint_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepetitionForms {
    pub norm: String,
    pub occurrences: usize,
    pub positional: PositionalHistogram,
    /// Neighbors with joint count of at least 2, by PMI descending.
    pub associative: Vec<Association>,
    /// `(σ - μ) / (σ + μ)` over gaps; absent below three occurrences.
    pub aggregative_burstiness: Option<f64>,
}

pub fn repetition_forms(
    stream: &TokenStream,
    norm: &str,
    window: usize,
) -> Result<RepetitionForms, Error> {
    if window == 0 {
        return Err(Error::ZeroWindow);
    }
    let positions = track_word(stream, norm).positions;
    if positions.is_empty() {
        return Err(Error::NoOccurrences(String::from(norm)));
    }
    let rel = positions_in_fragment(stream)?;
    Ok(RepetitionForms {
        norm: String::from(norm),
        occurrences: positions.len(),
        positional: positional_histogram(positions.iter().map(|&p| rel[p])),
        associative: associations(stream, norm, &positions, window),
        aggregative_burstiness: burstiness(&positions),
    })
}

pub fn positional_histogram(rel: impl Iterator<Item = f64>) -> PositionalHistogram {
    let (mut s, mut m, mut e, mut n) = (0usize, 0usize, 0usize, 0usize);
    for r in rel {
        n += 1;
        if r < 1.0 / 3.0 {
            s += 1;
        } else if r < 2.0 / 3.0 {
            m += 1;
        } else {
            e += 1;
        }
    }
    let n = n.max(1) as f64;
    PositionalHistogram {
        start: s as f64 / n,
        middle: m as f64 / n,
        end: e as f64 / n,
    }
}

/// Burstiness of a sorted position list; `None` with fewer than three positions.
pub fn burstiness(positions: &[usize]) -> Option<f64> {
    if positions.len() < 3 {
        return None;
    }
    let gaps: Vec<f64> = positions.windows(2).map(|w| (w[1] - w[0]) as f64).collect();
    let n = gaps.len() as f64;
    let mean = gaps.iter().sum::<f64>() / n;
    let var = gaps.iter().map(|g| (g - mean) * (g - mean)).sum::<f64>() / n;
    let sd = libm::sqrt(var);
    Some((sd - mean) / (sd + mean))
}

/// Number of neighbors within `w` tokens on either side of position `i`.
fn window_span(i: usize, n: usize, w: usize) -> usize {
    i.min(w) + (n - 1 - i).min(w)
}

/// PMI against windowed co-occurrence counts: with `c(x,y)` the joint pair
/// count, `m(.)` the pair marginals and `T` all pairs in the stream,
/// `pmi = log2(c(x,y) * T / (m(x) * m(y)))`.
fn associations(
    stream: &TokenStream,
    norm: &str,
    positions: &[usize],
    w: usize,
) -> Vec<Association> {
    let n = stream.len();
    let tokens = &stream.tokens;
    let total: u128 = (0..n).map(|i| window_span(i, n, w) as u128).sum();

    let mut marginals: BTreeMap<&str, u128> = BTreeMap::new();
    for (i, t) in tokens.iter().enumerate() {
        *marginals.entry(t.norm.as_str()).or_default() += window_span(i, n, w) as u128;
    }

    let mut joint: BTreeMap<&str, usize> = BTreeMap::new();
    for &i in positions {
        let lo = i.saturating_sub(w);
        let hi = (i + w).min(n - 1);
        for (j, t) in tokens.iter().enumerate().take(hi + 1).skip(lo) {
            if j != i && t.norm != norm {
                *joint.entry(t.norm.as_str()).or_default() += 1;
            }
        }
    }

    let mx = marginals[norm] as f64;
    let mut out: Vec<Association> = joint
        .into_iter()
        .filter(|(_, c)| *c >= 2)
        .map(|(y, c)| {
            let my = marginals[y] as f64;
            Association {
                neighbor: String::from(y),
                pmi: libm::log2(c as f64 * total as f64 / (mx * my)),
                joint_count: c,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        b.pmi
            .total_cmp(&a.pmi)
            .then_with(|| a.neighbor.cmp(&b.neighbor))
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GanttRow {
    pub norm: String,
    pub positions: Vec<usize>,
}

/// One row per non-empty track, ordered by first occurrence.
pub fn gantt_data(tracks: &[OccurrenceTrack]) -> Vec<GanttRow> {
    let mut rows: Vec<GanttRow> = tracks
        .iter()
        .filter(|t| !t.positions.is_empty())
        .map(|t| GanttRow {
            norm: t.norm.clone(),
            positions: t.positions.clone(),
        })
        .collect();
    rows.sort_by(|a, b| {
        a.positions[0]
            .cmp(&b.positions[0])
            .then_with(|| a.norm.cmp(&b.norm))
    });
    rows
}
