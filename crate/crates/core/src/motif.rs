//! Longest repeated token sequences (motifs).
//!
//! The stream's norms are mapped to dense integer ids, a suffix array is
//! built by prefix doubling with radix passes, and the LCP array comes from
//! Kasai's algorithm. Maximal repeats are the left-branching lcp-intervals
//! found by a single stack traversal of the LCP array.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::tokenize::TokenStream;
use crate::Error;

pub const DEFAULT_MOTIF_TOP_K: usize = 10;
pub const DEFAULT_MOTIF_MIN_COUNT: usize = 2;

/// Dense ids for norms, assigned in lexicographic order of the norm.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenAlphabet {
    to_id: BTreeMap<String, u32>,
    to_norm: Vec<String>,
}

impl TokenAlphabet {
    pub fn from_norms<'a>(norms: impl IntoIterator<Item = &'a str>) -> Self {
        let mut to_id: BTreeMap<String, u32> =
            norms.into_iter().map(|n| (String::from(n), 0)).collect();
        let mut to_norm = Vec::with_capacity(to_id.len());
        for (i, (norm, id)) in to_id.iter_mut().enumerate() {
            *id = i as u32;
            to_norm.push(norm.clone());
        }
        Self { to_id, to_norm }
    }

    pub fn id(&self, norm: &str) -> Option<u32> {
        self.to_id.get(norm).copied()
    }

    pub fn norm(&self, id: u32) -> Option<&str> {
        self.to_norm.get(id as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.to_norm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_norm.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixIndex {
    pub alphabet: TokenAlphabet,
    pub ids: Vec<u32>,
    /// Suffix start positions in lexicographic order of the suffixes.
    pub sa: Vec<usize>,
    /// `lcp[i]` is the common prefix length of suffixes `sa[i-1]` and `sa[i]`; `lcp[0] == 0`.
    pub lcp: Vec<usize>,
}

pub fn build_suffix_index(stream: &TokenStream) -> SuffixIndex {
    let alphabet = TokenAlphabet::from_norms(stream.norms());
    let ids: Vec<u32> = stream
        .norms()
        .map(|n| alphabet.id(n).expect("norm in alphabet"))
        .collect();
    let sa = suffix_array(&ids, alphabet.len());
    let lcp = lcp_array(&ids, &sa);
    SuffixIndex {
        alphabet,
        ids,
        sa,
        lcp,
    }
}

/// Suffix array of an integer sequence whose values are below `sigma`.
/// Prefix doubling with two counting-sort passes per round, O(n log n).
pub fn suffix_array(s: &[u32], sigma: usize) -> Vec<usize> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let buckets = sigma.max(n) + 1;
    let mut rank: Vec<usize> = s.iter().map(|&c| c as usize).collect();
    let mut sa: Vec<usize> = (0..n).collect();
    counting_sort(&mut sa, &rank, buckets);

    let mut tmp = vec![0usize; n];
    let mut second: Vec<usize> = Vec::with_capacity(n);
    let mut k = 1;
    loop {
        // order by second key: suffixes without a partner at i+k come first
        second.clear();
        second.extend(n.saturating_sub(k)..n);
        second.extend(sa.iter().filter(|&&p| p >= k).map(|&p| p - k));
        sa.copy_from_slice(&second);
        counting_sort(&mut sa, &rank, buckets);

        tmp[sa[0]] = 0;
        for w in 1..n {
            let (a, b) = (sa[w - 1], sa[w]);
            let ra = (rank[a], rank.get(a + k).map_or(0, |r| r + 1));
            let rb = (rank[b], rank.get(b + k).map_or(0, |r| r + 1));
            tmp[b] = tmp[a] + usize::from(ra != rb);
        }
        core::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] == n - 1 || k >= n {
            break;
        }
        k *= 2;
    }
    sa
}

/// Stable counting sort of `items` by `key[item]`.
fn counting_sort(items: &mut [usize], key: &[usize], buckets: usize) {
    let mut count = vec![0usize; buckets + 1];
    for &i in items.iter() {
        count[key[i] + 1] += 1;
    }
    for b in 1..count.len() {
        count[b] += count[b - 1];
    }
    let mut out = vec![0usize; items.len()];
    for &i in items.iter() {
        let slot = &mut count[key[i]];
        out[*slot] = i;
        *slot += 1;
    }
    items.copy_from_slice(&out);
}

/// Kasai et al. LCP array for a suffix array.
pub fn lcp_array(s: &[u32], sa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut rank = vec![0usize; n];
    for (i, &p) in sa.iter().enumerate() {
        rank[p] = i;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1];
            while i + h < n && j + h < n && s[i + h] == s[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Motif {
    pub token_norms: Vec<String>,
    pub length: usize,
    pub occurrences: Vec<usize>,
    pub count: usize,
    pub display: String,
}

impl Motif {
    fn new(token_norms: Vec<String>, occurrences: Vec<usize>) -> Self {
        let display = display_string(&token_norms);
        Self {
            length: token_norms.len(),
            count: occurrences.len(),
            token_norms,
            occurrences,
            display,
        }
    }
}

/// First three norms, "...", last two norms for motifs of six or more tokens;
/// otherwise all norms joined by spaces.
pub fn display_string(norms: &[String]) -> String {
    if norms.len() >= 6 {
        let head = norms[..3].join(" ");
        let tail = norms[norms.len() - 2..].join(" ");
        let mut s = head;
        s.push_str("...");
        s.push_str(&tail);
        s
    } else {
        norms.join(" ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotifQuery {
    pub top_k: usize,
    pub min_count: usize,
    pub allow_overlap: bool,
}

impl Default for MotifQuery {
    fn default() -> Self {
        Self {
            top_k: DEFAULT_MOTIF_TOP_K,
            min_count: DEFAULT_MOTIF_MIN_COUNT,
            allow_overlap: false,
        }
    }
}

/// An lcp-interval `[lb, rb]` of the suffix array whose shared prefix is a maximal repeat.
#[derive(Debug, Clone, Copy)]
struct Interval {
    length: usize,
    lb: usize,
    rb: usize,
}

/// Every maximal repeat, as lcp-intervals. Right-maximality is implied by the
/// interval structure; left-maximality is checked on the preceding tokens.
fn maximal_intervals(index: &SuffixIndex) -> Vec<Interval> {
    let n = index.sa.len();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)]; // (lcp, lb)
    for i in 1..=n {
        let cur = if i < n { index.lcp[i] } else { 0 };
        let mut lb = i - 1;
        while cur < stack.last().expect("sentinel").0 {
            let (length, top_lb) = stack.pop().expect("non-empty");
            let iv = Interval {
                length,
                lb: top_lb,
                rb: i - 1,
            };
            if left_branching(index, iv) {
                out.push(iv);
            }
            lb = top_lb;
        }
        if cur > stack.last().expect("sentinel").0 {
            stack.push((cur, lb));
        }
    }
    out
}

fn left_branching(index: &SuffixIndex, iv: Interval) -> bool {
    let mut prev: Option<u32> = None;
    for &p in &index.sa[iv.lb..=iv.rb] {
        if p == 0 {
            return true;
        }
        let c = index.ids[p - 1];
        match prev {
            None => prev = Some(c),
            Some(q) if q != c => return true,
            _ => {}
        }
    }
    false
}

/// Greedy leftmost selection of non-overlapping occurrences from a sorted list.
pub fn non_overlapping(sorted: &[usize], length: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for &p in sorted {
        if out.last().is_none_or(|&q| p >= q + length) {
            out.push(p);
        }
    }
    out
}

/// Maximal repeats ranked by length, then count, then first occurrence.
pub fn longest_repeats(
    index: &SuffixIndex,
    stream: &TokenStream,
    query: &MotifQuery,
) -> Result<Vec<Motif>, Error> {
    if query.min_count < 2 {
        return Err(Error::MinCountTooSmall(query.min_count));
    }
    if index.sa.len() != stream.len() {
        return Err(Error::IndexMismatch {
            index: index.sa.len(),
            stream: stream.len(),
        });
    }
    if stream.len() < 2 || query.top_k == 0 {
        return Ok(Vec::new());
    }

    let mut intervals = maximal_intervals(index);
    intervals.sort_by(|a, b| {
        b.length
            .cmp(&a.length)
            .then((b.rb - b.lb).cmp(&(a.rb - a.lb)))
    });

    let mut out: Vec<Motif> = Vec::new();
    let mut group: Vec<(Vec<usize>, usize)> = Vec::new(); // (occurrences, length)
    let mut i = 0;
    while i < intervals.len() && out.len() < query.top_k {
        let length = intervals[i].length;
        group.clear();
        while i < intervals.len() && intervals[i].length == length {
            let iv = intervals[i];
            let mut occ = index.sa[iv.lb..=iv.rb].to_vec();
            occ.sort_unstable();
            if !query.allow_overlap {
                occ = non_overlapping(&occ, length);
            }
            if occ.len() >= query.min_count {
                group.push((occ, length));
            }
            i += 1;
        }
        group.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0[0].cmp(&b.0[0])));
        for (occ, length) in group.drain(..) {
            if out.len() == query.top_k {
                break;
            }
            let start = occ[0];
            let norms = stream.tokens[start..start + length]
                .iter()
                .map(|t| t.norm.clone())
                .collect();
            out.push(Motif::new(norms, occ));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotifRow {
    pub display: String,
    /// Half-open `[start, end)` token intervals, clipped to the stream length.
    pub spans: Vec<(usize, usize)>,
}

pub fn motif_chart_data(motifs: &[Motif], stream_length: usize) -> Vec<MotifRow> {
    motifs
        .iter()
        .map(|m| MotifRow {
            display: m.display.clone(),
            spans: m
                .occurrences
                .iter()
                .map(|&o| (o.min(stream_length), (o + m.length).min(stream_length)))
                .collect(),
        })
        .collect()
}
