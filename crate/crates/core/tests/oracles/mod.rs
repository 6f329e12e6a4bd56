//! Independent reference implementations. Each one is the most direct
//! (and slowest) way to compute its quantity, written without looking at
//! the optimized code paths it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// Sort all suffixes by direct comparison.
pub fn naive_suffix_array<T: Ord>(s: &[T]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..s.len()).collect();
    sa.sort_by(|&a, &b| s[a..].cmp(&s[b..]));
    sa
}

/// LCP of adjacent suffixes by character-by-character comparison; `lcp[0] = 0`.
pub fn direct_lcp<T: Eq>(s: &[T], sa: &[usize]) -> Vec<usize> {
    let mut lcp = vec![0; sa.len()];
    for i in 1..sa.len() {
        let (a, b) = (&s[sa[i - 1]..], &s[sa[i]..]);
        lcp[i] = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    }
    lcp
}

/// Every start position where `pattern` occurs, overlaps included.
pub fn match_positions<T: Eq>(s: &[T], pattern: &[T]) -> Vec<usize> {
    if pattern.is_empty() || pattern.len() > s.len() {
        return Vec::new();
    }
    (0..=s.len() - pattern.len())
        .filter(|&i| &s[i..i + pattern.len()] == pattern)
        .collect()
}

/// Longest repeated substring length (overlaps allowed) and every distinct
/// substring of that length occurring at least twice. Quadratic: the longest
/// common extension of every position pair, by dynamic programming.
pub fn brute_longest_repeats<T: Ord + Clone>(s: &[T]) -> (usize, BTreeSet<Vec<T>>) {
    let n = s.len();
    // lce[i][j] for i < j, filled from the back; one row kept at a time
    let mut best = 0;
    let mut starts: BTreeSet<usize> = BTreeSet::new();
    let mut next = vec![0usize; n + 1];
    for i in (0..n).rev() {
        let mut row = vec![0usize; n + 1];
        for j in (i + 1..n).rev() {
            if s[i] == s[j] {
                row[j] = 1 + next[j + 1];
            }
            let l = row[j];
            if l > best {
                best = l;
                starts.clear();
            }
            if l == best && l > 0 {
                starts.insert(i);
                starts.insert(j);
            }
        }
        next = row;
    }
    let witnesses = starts
        .into_iter()
        .map(|i| s[i..i + best].to_vec())
        .collect();
    (best, witnesses)
}

/// Moving-average TTR by recounting every window from scratch.
pub fn mattr_oracle<T: Ord>(tokens: &[T], window: usize) -> f64 {
    let n = tokens.len();
    if n < window {
        return tokens.iter().collect::<BTreeSet<_>>().len() as f64 / n as f64;
    }
    let mut sum = 0.0;
    for start in 0..=n - window {
        let distinct = tokens[start..start + window]
            .iter()
            .collect::<BTreeSet<_>>()
            .len();
        sum += distinct as f64 / window as f64;
    }
    sum / (n - window + 1) as f64
}

/// Counts by linear scan, skipping stopwords.
pub fn recount<'a>(
    norms: impl Iterator<Item = &'a str>,
    stop: &BTreeSet<String>,
) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for n in norms {
        if !stop.contains(n) {
            *m.entry(n.to_owned()).or_insert(0) += 1;
        }
    }
    m
}

/// Global optimum of 1-D k-means over sorted points by trying every way of
/// cutting the sorted list into `k` non-empty contiguous runs.
pub fn exhaustive_kmeans(points: &[f64], k: usize) -> (f64, Vec<usize>) {
    fn cost(run: &[f64]) -> f64 {
        let m = run.iter().sum::<f64>() / run.len() as f64;
        run.iter().map(|x| (x - m) * (x - m)).sum()
    }
    let n = points.len();
    let mut best = (f64::INFINITY, Vec::new());
    let mut cuts = vec![0usize; k - 1];
    enumerate_cuts(n, k, 0, 1, &mut cuts, &mut |cuts| {
        let mut labels = vec![0usize; n];
        let mut total = 0.0;
        let mut start = 0;
        for (c, end) in cuts.iter().copied().chain(std::iter::once(n)).enumerate() {
            total += cost(&points[start..end]);
            for l in &mut labels[start..end] {
                *l = c;
            }
            start = end;
        }
        if total < best.0 {
            best = (total, labels);
        }
    });
    best
}

fn enumerate_cuts(
    n: usize,
    k: usize,
    slot: usize,
    min: usize,
    cuts: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if slot == k - 1 {
        f(cuts);
        return;
    }
    let remaining = k - 1 - slot;
    for c in min..=n - remaining {
        cuts[slot] = c;
        enumerate_cuts(n, k, slot + 1, c + 1, cuts, f);
    }
}

/// Population-σ burstiness straight from the definition.
pub fn burstiness_oracle(positions: &[usize]) -> f64 {
    let gaps: Vec<f64> = positions.windows(2).map(|w| (w[1] - w[0]) as f64).collect();
    let mu = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let sigma = (gaps.iter().map(|g| (g - mu).powi(2)).sum::<f64>() / gaps.len() as f64).sqrt();
    (sigma - mu) / (sigma + mu)
}

/// Checks XML well-formedness of the subset emitted by the renderer: a
/// declaration, nested elements, attributes with quoted values, text, and
/// the five predefined entities. Returns the root element name.
pub fn check_xml(doc: &str) -> Result<String, String> {
    let mut rest = doc;
    if let Some(r) = rest.strip_prefix("<?xml") {
        let end = r.find("?>").ok_or("unterminated declaration")?;
        rest = &r[end + 2..];
    }
    let mut stack: Vec<String> = Vec::new();
    let mut root: Option<String> = None;
    let mut closed_root = false;
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('<') {
            if closed_root && !r.starts_with('!') {
                return Err("content after root element".into());
            }
            if let Some(r2) = r.strip_prefix('/') {
                let end = r2.find('>').ok_or("unterminated end tag")?;
                let name = r2[..end].trim();
                let open = stack.pop().ok_or_else(|| format!("unexpected </{name}>"))?;
                if open != name {
                    return Err(format!("</{name}> closes <{open}>"));
                }
                if stack.is_empty() {
                    closed_root = true;
                }
                rest = &r2[end + 1..];
                continue;
            }
            let end = find_tag_end(r).ok_or("unterminated start tag")?;
            let inner = &r[..end];
            let (inner, self_closing) = match inner.strip_suffix('/') {
                Some(i) => (i, true),
                None => (inner, false),
            };
            let name = parse_tag(inner)?;
            if root.is_none() {
                root = Some(name.clone());
            } else if stack.is_empty() {
                return Err("multiple root elements".into());
            }
            if self_closing {
                if stack.is_empty() {
                    closed_root = true;
                }
            } else {
                stack.push(name);
            }
            rest = &r[end + 1..];
        } else {
            let end = rest.find('<').unwrap_or(rest.len());
            let text = &rest[..end];
            if stack.is_empty() && !text.trim().is_empty() {
                return Err("text outside root element".into());
            }
            check_text(text)?;
            rest = &rest[end..];
        }
    }
    if !stack.is_empty() {
        return Err(format!("unclosed <{}>", stack.last().unwrap()));
    }
    root.ok_or_else(|| "no root element".into())
}

fn find_tag_end(s: &str) -> Option<usize> {
    let mut quote: Option<char> = None;
    for (i, c) in s.char_indices() {
        match (quote, c) {
            (None, '"') | (None, '\'') => quote = Some(c),
            (Some(q), c) if c == q => quote = None,
            (None, '>') => return Some(i),
            _ => {}
        }
    }
    None
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_' || c == ':')
        && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | ':' | '-' | '.'))
}

fn parse_tag(inner: &str) -> Result<String, String> {
    let name_end = inner.find(char::is_whitespace).unwrap_or(inner.len());
    let name = &inner[..name_end];
    if !is_name(name) {
        return Err(format!("bad element name {name:?}"));
    }
    let mut rest = inner[name_end..].trim_start();
    let mut seen = BTreeSet::new();
    while !rest.is_empty() {
        let eq = rest
            .find('=')
            .ok_or_else(|| format!("attribute without value in <{name}>"))?;
        let attr = rest[..eq].trim();
        if !is_name(attr) || !seen.insert(attr.to_owned()) {
            return Err(format!("bad or repeated attribute {attr:?} in <{name}>"));
        }
        let after = rest[eq + 1..].trim_start();
        let q = after.chars().next().ok_or("missing attribute value")?;
        if q != '"' && q != '\'' {
            return Err(format!("unquoted attribute {attr:?}"));
        }
        let close = after[1..].find(q).ok_or("unterminated attribute value")?;
        let value = &after[1..1 + close];
        if value.contains('<') {
            return Err("'<' in attribute value".into());
        }
        check_text(value)?;
        rest = after[close + 2..].trim_start();
    }
    Ok(name.to_owned())
}

fn check_text(text: &str) -> Result<(), String> {
    let mut rest = text;
    while let Some(i) = rest.find('&') {
        let r = &rest[i + 1..];
        let end = r.find(';').ok_or("unterminated entity")?;
        let ent = &r[..end];
        let ok = matches!(ent, "amp" | "lt" | "gt" | "quot" | "apos")
            || ent
                .strip_prefix('#')
                .is_some_and(|d| d.chars().all(|c| c.is_ascii_digit()) && !d.is_empty());
        if !ok {
            return Err(format!("unknown entity &{ent};"));
        }
        rest = &r[end + 1..];
    }
    Ok(())
}
