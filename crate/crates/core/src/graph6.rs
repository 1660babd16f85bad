//! graph6 encoding and decoding.
//!
//! The format packs the upper triangle of the adjacency matrix column by
//! column (`(0,1), (0,2), (1,2), (0,3), ...`) into 6-bit groups, each offset
//! by 63 to land in the printable range.

use crate::graph::{Graph, GraphError};

const OFFSET: u8 = 63;

fn malformed(msg: impl Into<String>) -> GraphError {
    GraphError::MalformedGraph6(msg.into())
}

fn decode_n(bytes: &[u8]) -> Result<(usize, usize), GraphError> {
    let first = *bytes.first().ok_or_else(|| malformed("empty input"))?;
    if first < 126 {
        return Ok(((first - OFFSET) as usize, 1));
    }
    let take = |range: std::ops::Range<usize>| -> Result<usize, GraphError> {
        let chunk = bytes.get(range).ok_or_else(|| malformed("truncated vertex count"))?;
        Ok(chunk.iter().fold(0usize, |acc, &b| (acc << 6) | (b - OFFSET) as usize))
    };
    if bytes.get(1) == Some(&126) {
        Ok((take(2..8)?, 8))
    } else {
        Ok((take(1..4)?, 4))
    }
}

/// Decodes one graph6 line. An optional `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(OFFSET..=126).contains(&b)) {
        return Err(malformed(format!("byte {b:#x} outside the printable graph6 range")));
    }
    let (n, header) = decode_n(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let body = &bytes[header..];
    if body.len() != bits.div_ceil(6) {
        return Err(malformed(format!(
            "expected {} data bytes for {n} vertices, found {}",
            bits.div_ceil(6),
            body.len()
        )));
    }
    let mut pairs = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - OFFSET;
            if byte >> (5 - k % 6) & 1 == 1 {
                pairs.push((u, v));
            }
            k += 1;
        }
    }
    Graph::new(n, pairs)
}

/// Encodes a graph as a graph6 line (no header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + OFFSET);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + OFFSET));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + OFFSET));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
