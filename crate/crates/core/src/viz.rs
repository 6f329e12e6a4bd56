//! Deterministic SVG rendering for the four report charts.
//!
//! Output depends only on the chart spec: numbers are printed with two
//! decimals, elements are emitted in data order, nothing time-dependent is
//! written.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::motif::MotifRow;
use crate::occurrence::GanttRow;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartKind {
    Pie,
    GanttScatter,
    MotifBars,
    Wordcloud,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ChartData {
    /// Labels and shares, drawn clockwise from twelve o'clock in the given order.
    Pie {
        labels: Vec<String>,
        shares: Vec<f64>,
    },
    GanttScatter {
        rows: Vec<GanttRow>,
        stream_length: usize,
    },
    MotifBars {
        rows: Vec<MotifRow>,
        stream_length: usize,
    },
    Wordcloud {
        words: Vec<(String, f64)>,
    },
}

impl ChartData {
    pub fn kind(&self) -> ChartKind {
        match self {
            ChartData::Pie { .. } => ChartKind::Pie,
            ChartData::GanttScatter { .. } => ChartKind::GanttScatter,
            ChartData::MotifBars { .. } => ChartKind::MotifBars,
            ChartData::Wordcloud { .. } => ChartKind::Wordcloud,
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            ChartData::Pie { shares, .. } => shares.iter().all(|s| *s <= 0.0),
            ChartData::GanttScatter { rows, .. } => rows.is_empty(),
            ChartData::MotifBars { rows, .. } => rows.is_empty(),
            ChartData::Wordcloud { words } => words.is_empty(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartSpec {
    pub kind: ChartKind,
    pub width: u32,
    pub height: u32,
    pub title: String,
    pub data: ChartData,
}

impl ChartSpec {
    pub fn new(title: impl Into<String>, width: u32, height: u32, data: ChartData) -> Self {
        Self {
            kind: data.kind(),
            width,
            height,
            title: title.into(),
            data,
        }
    }
}

const PALETTE: [&str; 10] = [
    "#d62728", "#8c564b", "#9467bd", "#ffbf00", "#7f7f7f", "#1f77b4", "#2ca02c", "#e377c2",
    "#17becf", "#bcbd22",
];
const TITLE_BAND: f64 = 36.0;

/// Formats a coordinate with two decimals, never as negative zero.
fn num(x: f64) -> String {
    let mut s = String::new();
    let _ = write!(s, "{:.2}", x);
    if s == "-0.00" {
        s.remove(0);
    }
    s
}

pub fn escape_xml(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            other => out.push(other),
        }
    }
    out
}

pub fn render(spec: &ChartSpec) -> Result<String, Error> {
    if spec.width == 0 || spec.height == 0 {
        return Err(Error::ChartSize);
    }
    if spec.kind != spec.data.kind() {
        return Err(Error::ChartDataMismatch);
    }
    let (w, h) = (spec.width as f64, spec.height as f64);
    let mut svg = String::new();
    let _ = write!(
        svg,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
        spec.width, spec.height
    );
    let _ = writeln!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        spec.width, spec.height
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>",
        num(w / 2.0),
        escape_xml(&spec.title)
    );

    if spec.data.is_empty() {
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">no data</text>",
            num(w / 2.0),
            num(h / 2.0)
        );
    } else {
        match &spec.data {
            ChartData::Pie { labels, shares } => pie(&mut svg, w, h, labels, shares),
            ChartData::GanttScatter {
                rows,
                stream_length,
            } => gantt(&mut svg, w, h, rows, *stream_length),
            ChartData::MotifBars {
                rows,
                stream_length,
            } => motif_bars(&mut svg, w, h, rows, *stream_length),
            ChartData::Wordcloud { words } => wordcloud(&mut svg, w, h, words),
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Slice angles in degrees, proportional to the (non-negative) shares.
pub fn pie_angles(shares: &[f64]) -> Vec<f64> {
    let total: f64 = shares.iter().map(|s| s.max(0.0)).sum();
    shares
        .iter()
        .map(|s| {
            if total > 0.0 {
                360.0 * s.max(0.0) / total
            } else {
                0.0
            }
        })
        .collect()
}

fn pie(svg: &mut String, w: f64, h: f64, labels: &[String], shares: &[f64]) {
    let legend_w = 170.0;
    let r = ((w - legend_w).min(h - TITLE_BAND) / 2.0 - 12.0).max(10.0);
    let cx = (w - legend_w) / 2.0;
    let cy = TITLE_BAND + (h - TITLE_BAND) / 2.0;
    let angles = pie_angles(shares);

    let point = |deg: f64| {
        let rad = (deg - 90.0) * PI / 180.0;
        (cx + r * libm::cos(rad), cy + r * libm::sin(rad))
    };
    let mut start = 0.0;
    for (i, &a) in angles.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if a <= 0.0 {
            continue;
        }
        if a >= 360.0 - 1e-9 {
            let _ = writeln!(
                svg,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"#ffffff\"/>",
                num(cx),
                num(cy),
                num(r),
                color
            );
        } else {
            let (x0, y0) = point(start);
            let (x1, y1) = point(start + a);
            let large = u8::from(a > 180.0);
            let _ = writeln!(
                svg,
                "<path d=\"M {} {} L {} {} A {} {} 0 {} 1 {} {} Z\" fill=\"{}\" stroke=\"#ffffff\"/>",
                num(cx),
                num(cy),
                num(x0),
                num(y0),
                num(r),
                num(r),
                large,
                num(x1),
                num(y1),
                color
            );
        }
        start += a;
    }
    let lx = w - legend_w + 10.0;
    for (i, label) in labels.iter().enumerate() {
        let y = TITLE_BAND + 20.0 + 22.0 * i as f64;
        let pct = angles.get(i).copied().unwrap_or(0.0) / 3.6;
        let _ = writeln!(
            svg,
            "<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>",
            num(lx),
            num(y - 10.0),
            PALETTE[i % PALETTE.len()]
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{} {}%</text>",
            num(lx + 18.0),
            num(y),
            escape_xml(label),
            num(pct)
        );
    }
}

const AXIS_LEFT: f64 = 120.0;
const AXIS_RIGHT: f64 = 20.0;

/// Horizontal coordinate of a token index on a track axis of the given chart width.
pub fn track_x(position: usize, stream_length: usize, width: f64, left: f64) -> f64 {
    let span = stream_length.saturating_sub(1).max(1) as f64;
    left + (width - left - AXIS_RIGHT) * position as f64 / span
}

fn axis(svg: &mut String, w: f64, bottom: f64, left: f64, stream_length: usize) {
    let _ = writeln!(
        svg,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\"/>",
        num(left),
        num(bottom),
        num(w - AXIS_RIGHT),
        num(bottom)
    );
    let last = stream_length.saturating_sub(1);
    for q in 0..=4 {
        let pos = last * q / 4;
        let x = track_x(pos, stream_length, w, left);
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{}</text>",
            num(x),
            num(bottom + 14.0),
            pos
        );
    }
}

fn gantt(svg: &mut String, w: f64, h: f64, rows: &[GanttRow], stream_length: usize) {
    let band = (h - TITLE_BAND - 30.0) / rows.len() as f64;
    for (i, row) in rows.iter().enumerate() {
        let y = TITLE_BAND + band * (i as f64 + 0.5);
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">{}</text>",
            num(AXIS_LEFT - 8.0),
            num(y + 4.0),
            escape_xml(&row.norm)
        );
        let _ = writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\"/>",
            num(AXIS_LEFT),
            num(y),
            num(w - AXIS_RIGHT),
            num(y)
        );
        for &p in &row.positions {
            let _ = writeln!(
                svg,
                "<circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"{}\"/>",
                num(track_x(p, stream_length, w, AXIS_LEFT)),
                num(y),
                color
            );
        }
    }
    axis(svg, w, h - 24.0, AXIS_LEFT, stream_length);
}

const MOTIF_LEFT: f64 = 240.0;

fn motif_bars(svg: &mut String, w: f64, h: f64, rows: &[MotifRow], stream_length: usize) {
    let band = (h - TITLE_BAND - 30.0) / rows.len() as f64;
    let bar_h = (band * 0.6).max(1.0);
    for (i, row) in rows.iter().enumerate() {
        let y = TITLE_BAND + band * (i as f64 + 0.5);
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            num(MOTIF_LEFT - 8.0),
            num(y + 4.0),
            escape_xml(&row.display)
        );
        for &(start, end) in &row.spans {
            let x0 = track_x(start, stream_length, w, MOTIF_LEFT);
            let x1 = track_x(end, stream_length, w, MOTIF_LEFT);
            let _ = writeln!(
                svg,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                num(x0),
                num(y - bar_h / 2.0),
                num((x1 - x0).max(1.0)),
                num(bar_h),
                color
            );
        }
    }
    axis(svg, w, h - 24.0, MOTIF_LEFT, stream_length);
}

pub const WORDCLOUD_MAX_FONT: f64 = 64.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacedWord {
    pub text: String,
    pub font_size: f64,
    /// Top-left corner and extent of the word's bounding rectangle.
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl PlacedWord {
    pub fn overlaps(&self, other: &PlacedWord) -> bool {
        self.x < other.x + other.width
            && other.x < self.x + self.width
            && self.y < other.y + other.height
            && other.y < self.y + self.height
    }
}

/// Archimedean-spiral placement by descending weight. A word that finds no
/// free spot inside the canvas is left out.
pub fn layout_wordcloud(words: &[(String, f64)], width: f64, height: f64) -> Vec<PlacedWord> {
    let mut order: Vec<&(String, f64)> = words.iter().filter(|(_, wt)| *wt > 0.0).collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));

    let top = TITLE_BAND;
    let (cx, cy) = (width / 2.0, top + (height - top) / 2.0);
    let mut placed: Vec<PlacedWord> = Vec::with_capacity(order.len());
    for (text, weight) in order {
        let font = WORDCLOUD_MAX_FONT * weight.min(1.0);
        let bw = 0.6 * font * text.chars().count() as f64;
        let bh = font;
        let mut theta = 0.0f64;
        while theta < 600.0 {
            let r = 2.0 * theta;
            let x = cx + r * libm::cos(theta) - bw / 2.0;
            let y = cy + r * libm::sin(theta) - bh / 2.0;
            let cand = PlacedWord {
                text: text.clone(),
                font_size: font,
                x,
                y,
                width: bw,
                height: bh,
            };
            let inside = x >= 0.0 && y >= top && x + bw <= width && y + bh <= height;
            if inside && !placed.iter().any(|p| p.overlaps(&cand)) {
                placed.push(cand);
                break;
            }
            theta += 0.05;
        }
    }
    placed
}

fn wordcloud(svg: &mut String, w: f64, h: f64, words: &[(String, f64)]) {
    for (i, p) in layout_wordcloud(words, w, h).iter().enumerate() {
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"{}\" text-anchor=\"middle\" fill=\"{}\">{}</text>",
            num(p.x + p.width / 2.0),
            num(p.y + 0.8 * p.height),
            num(p.font_size),
            PALETTE[i % PALETTE.len()],
            escape_xml(&p.text)
        );
    }
}
