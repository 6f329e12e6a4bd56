//! Fixed-size, non-overlapping performance units. The last unit may be short.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::tokenize::{join_surfaces, TokenStream};
use crate::Error;

/// Default unit size: thirty words, roughly 10 to 15 seconds of stage time.
pub const DEFAULT_SEGMENT_SIZE: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub index: usize,
    pub start: usize,
    pub end: usize,
    pub token_count: usize,
}

pub fn segment_stream(stream: &TokenStream, size: usize) -> Result<Vec<Segment>, Error> {
    segment_len(stream.len(), size)
}

/// Segmentation of a stream of `n` tokens.
pub fn segment_len(n: usize, size: usize) -> Result<Vec<Segment>, Error> {
    if size == 0 {
        return Err(Error::ZeroSegmentSize);
    }
    Ok((0..n.div_ceil(size))
        .map(|index| {
            let start = index * size;
            let end = (start + size).min(n);
            Segment {
                index,
                start,
                end,
                token_count: end - start,
            }
        })
        .collect())
}

pub fn segment_text(stream: &TokenStream, seg: &Segment) -> Result<String, Error> {
    if seg.start > seg.end || seg.end > stream.len() {
        return Err(Error::SegmentOutOfBounds {
            start: seg.start,
            end: seg.end,
            len: stream.len(),
        });
    }
    Ok(join_surfaces(&stream.tokens[seg.start..seg.end]))
}
