//! Whitespace tokenization with breath-unit (fragment) boundaries.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::textio::CleanDocument;
use crate::Error;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenMode {
    /// Trailing `? ! . , —` stripped from the norm.
    #[default]
    Plain,
    /// Trailing `?` and `!` stay on the norm, so "what?" and "what" count apart.
    PunctAttached,
}

impl TokenMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenMode::Plain => "plain",
            TokenMode::PunctAttached => "punct-attached",
        }
    }
}

impl fmt::Display for TokenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TokenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(TokenMode::Plain),
            "punct-attached" => Ok(TokenMode::PunctAttached),
            other => Err(Error::UnknownTokenMode(other.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub norm: String,
    pub index: usize,
    /// Offset in Unicode scalar values into the cleaned document.
    pub char_offset: usize,
    pub fragment_id: usize,
    pub punct_attached: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenStream {
    pub tokens: Vec<Token>,
    pub fragment_count: usize,
    pub mode: TokenMode,
}

impl TokenStream {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn norms(&self) -> impl Iterator<Item = &str> + '_ {
        self.tokens.iter().map(|t| t.norm.as_str())
    }

    /// Surfaces joined by single spaces.
    pub fn surface_text(&self) -> String {
        join_surfaces(&self.tokens)
    }
}

pub(crate) fn join_surfaces(tokens: &[Token]) -> String {
    let mut out = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&t.surface);
    }
    out
}

const BOUNDARY_MARKS: [char; 4] = ['.', '?', '!', '\u{2014}'];
const CLOSERS: [char; 3] = ['"', '\'', ')'];

/// Whether a fragment closes after this surface. Closing quotes and
/// parentheses are looked through.
fn closes_fragment(surface: &str) -> bool {
    surface
        .trim_end_matches(CLOSERS)
        .chars()
        .next_back()
        .is_some_and(|c| BOUNDARY_MARKS.contains(&c))
}

/// Normalized form of one surface token.
pub fn normalize_token(surface: &str, mode: TokenMode) -> String {
    let lower = surface.to_lowercase();
    let stripped = match mode {
        TokenMode::Plain => lower.trim_end_matches(['?', '!', '.', ',', '\u{2014}']),
        TokenMode::PunctAttached => {
            // strip trailing . , — that sit after any ?/! run: "what?..." -> "what?"
            lower.trim_end_matches(['.', ',', '\u{2014}'])
        }
    };
    if stripped.is_empty() {
        lower
    } else {
        String::from(stripped)
    }
}

pub fn tokenize(doc: &CleanDocument, mode: TokenMode) -> TokenStream {
    tokenize_str(&doc.content, mode)
}

pub fn tokenize_str(text: &str, mode: TokenMode) -> TokenStream {
    let mut tokens = Vec::new();
    let mut fragment = 0usize;
    let mut pending_boundary = false;

    let mut start: Option<(usize, usize)> = None; // (byte, scalar)
    let mut push = |byte_start: usize, byte_end: usize, scalar_start: usize| {
        let surface = &text[byte_start..byte_end];
        if pending_boundary {
            fragment += 1;
            pending_boundary = false;
        }
        let index = tokens.len();
        tokens.push(Token {
            surface: String::from(surface),
            norm: normalize_token(surface, mode),
            index,
            char_offset: scalar_start,
            fragment_id: fragment,
            punct_attached: mode == TokenMode::PunctAttached,
        });
        pending_boundary = closes_fragment(surface);
    };

    for (scalar, (byte, c)) in text.char_indices().enumerate() {
        if c.is_whitespace() {
            if let Some((b, s)) = start.take() {
                push(b, byte, s);
            }
        } else if start.is_none() {
            start = Some((byte, scalar));
        }
    }
    if let Some((b, s)) = start {
        push(b, text.len(), s);
    }

    let fragment_count = tokens.last().map_or(0, |t| t.fragment_id + 1);
    TokenStream {
        tokens,
        fragment_count,
        mode,
    }
}

/// Relative position of every token inside its fragment, in `[0, 1]`.
/// Single-token fragments map to 0.5.
pub fn positions_in_fragment(stream: &TokenStream) -> Result<Vec<f64>, Error> {
    if stream.is_empty() {
        return Err(Error::NoTokens);
    }
    let mut out = Vec::with_capacity(stream.len());
    let tokens = &stream.tokens;
    let mut start = 0;
    while start < tokens.len() {
        let id = tokens[start].fragment_id;
        let end = tokens[start..]
            .iter()
            .position(|t| t.fragment_id != id)
            .map_or(tokens.len(), |off| start + off);
        let len = end - start;
        if len == 1 {
            out.push(0.5);
        } else {
            let denom = (len - 1) as f64;
            out.extend((0..len).map(|i| i as f64 / denom));
        }
        start = end;
    }
    Ok(out)
}
