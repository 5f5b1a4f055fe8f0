//! graph6 encoding for graphs with at most 62 vertices.
//!
//! The order is a single byte `n + 63`. The upper triangle of the adjacency
//! matrix follows, column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed six bits per byte, most significant bit first, each byte offset by
//! 63. The final byte is zero-padded.

use thiserror::Error;

use crate::graph::Graph;

/// Largest order representable with a single-byte header.
pub const MAX_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("truncated graph6 record at byte {offset}")]
    Truncated { offset: usize },
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("malformed header at byte {offset}: orders above {MAX_ORDER} are not supported")]
    UnsupportedOrder { offset: usize },
    #[error("malformed header at byte {offset}: a graph needs at least one vertex")]
    ZeroOrder { offset: usize },
    #[error("unexpected trailing data at byte {offset}")]
    TrailingData { offset: usize },
    #[error("nonzero padding bits in byte {offset}")]
    NonzeroPadding { offset: usize },
    #[error("cannot encode a graph on {0} vertices (limit {MAX_ORDER})")]
    OrderTooLarge(usize),
}

fn bit_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    let check = |offset: usize| -> Result<u8, Graph6Error> {
        let byte = *bytes.get(offset).ok_or(Graph6Error::Truncated { offset })?;
        if (63..=126).contains(&byte) {
            Ok(byte - 63)
        } else {
            Err(Graph6Error::ByteOutOfRange { offset, byte })
        }
    };
    let n = check(0)? as usize;
    if n == 63 {
        return Err(Graph6Error::UnsupportedOrder { offset: 0 });
    }
    if n == 0 {
        return Err(Graph6Error::ZeroOrder { offset: 0 });
    }
    let bits = bit_count(n);
    let body_len = bits.div_ceil(6);
    let mut edges = Vec::new();
    let mut k = 0;
    let (mut i, mut j) = (0usize, 1usize);
    for b in 0..body_len {
        let offset = 1 + b;
        let chunk = check(offset)?;
        for shift in (0..6).rev() {
            let bit = chunk >> shift & 1;
            if k < bits {
                if bit == 1 {
                    edges.push((i, j));
                }
                i += 1;
                if i == j {
                    i = 0;
                    j += 1;
                }
            } else if bit == 1 {
                return Err(Graph6Error::NonzeroPadding { offset });
            }
            k += 1;
        }
    }
    if bytes.len() > 1 + body_len {
        return Err(Graph6Error::TrailingData { offset: 1 + body_len });
    }
    Ok(Graph::from_edges(n, edges).expect("graph6 bit layout yields a simple graph"))
}

pub fn emit_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let mut out = Vec::with_capacity(1 + bit_count(n).div_ceil(6));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// Parses a graph6 file body: one record per line, blank lines ignored.
/// Errors carry the 1-based line number.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, (usize, Graph6Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim()).map_err(|e| (i + 1, e)))
        .collect()
}
