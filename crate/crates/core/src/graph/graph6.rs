//! graph6 reading and writing (bits of the upper triangle in column order,
//! six per printable byte, offset 63).

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses one graph6 code. An optional `>>graph6<<` header and trailing
/// whitespace are accepted; offsets in errors count from the start of `text`.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    if text.starts_with(HEADER) {
        pos = HEADER.len();
    }
    let end = text.trim_end().len();
    if pos >= end {
        return Err(parse_err(pos, "missing vertex count"));
    }
    let byte = |p: usize| -> Result<u8> {
        if p >= end {
            return Err(parse_err(p, "truncated input"));
        }
        let b = bytes[p];
        if !(63..=126).contains(&b) {
            return Err(parse_err(p, format!("byte 0x{b:02x} outside the graph6 range")));
        }
        Ok(b - 63)
    };
    let first = byte(pos)?;
    let n = if first < 63 {
        pos += 1;
        first as usize
    } else {
        if byte(pos + 1)? == 63 {
            return Err(Error::UnsupportedSize(format!(
                "8-byte graph6 size header; at most {MAX_VERTICES} vertices are supported"
            )));
        }
        let mut n = 0usize;
        for i in 1..=3 {
            n = (n << 6) | byte(pos + i)? as usize;
        }
        if n < 63 {
            return Err(parse_err(pos, "long size header used for fewer than 63 vertices"));
        }
        pos += 4;
        n
    };
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize(format!("{n} vertices exceeds the cap of {MAX_VERTICES}")));
    }
    let bit_count = n * n.saturating_sub(1) / 2;
    let byte_count = bit_count.div_ceil(6);
    let mut edges = Vec::new();
    let mut k = 0;
    for b in 0..byte_count {
        let chunk = byte(pos + b)?;
        for shift in (0..6).rev() {
            let set = chunk >> shift & 1 == 1;
            if k < bit_count {
                if set {
                    edges.push(column_pair(k));
                }
            } else if set {
                return Err(parse_err(pos + b, "non-zero padding bits"));
            }
            k += 1;
        }
    }
    if pos + byte_count != end {
        return Err(parse_err(pos + byte_count, "trailing bytes after graph payload"));
    }
    Graph::from_edges(n, edges)
}

/// Newline-delimited graph6; blank lines are skipped. Error offsets are
/// relative to the whole text.
pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.trim_end_matches(['\n', '\r']);
        if !content.trim().is_empty() {
            graphs.push(parse_graph6(content).map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::Parse {
                    offset: offset + o,
                    message,
                },
                other => other,
            })?);
        }
        offset += line.len();
    }
    Ok(graphs)
}

// k-th bit of the column-order upper triangle: (0,1), (0,2), (1,2), (0,3), ...
fn column_pair(k: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= k {
        start += j;
        j += 1;
    }
    (k - start, j)
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}
