//! graph6 encoding: a size header followed by the upper adjacency triangle,
//! column by column (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per byte
//! offset by 63 and zero padded.

use std::io::BufRead;

use crate::graph::{bit, Graph, GraphError, Result, MAX_VERTICES};

const OFFSET: u8 = 63;
const LONG_HEADER: u8 = 126;
const STREAM_HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * (n - 1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(LONG_HEADER);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            acc = (acc << 1) | ((row >> i) & 1) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn malformed(msg: impl Into<String>) -> GraphError {
    GraphError::Graph6(msg.into())
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.strip_prefix(STREAM_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(OFFSET..=LONG_HEADER).contains(b)) {
        return Err(malformed(format!("byte {pos} outside the printable range 63..=126")));
    }
    let (n, header) = match bytes {
        [] => return Err(malformed("empty string")),
        [LONG_HEADER, LONG_HEADER, ..] => {
            return Err(malformed("36-bit size header exceeds the 64-vertex capacity"))
        }
        [LONG_HEADER, rest @ ..] => {
            if rest.len() < 3 {
                return Err(malformed("truncated 18-bit size header"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - OFFSET) as usize);
            if n < 63 {
                return Err(malformed(format!("18-bit header used for n = {n}")));
            }
            (n, 4)
        }
        [b, ..] => ((b - OFFSET) as usize, 1),
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(GraphError::VertexCount(n));
    }
    let nbits = n * (n - 1) / 2;
    let body = &bytes[header..];
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(malformed(format!(
            "truncated edge section: {} of {expected} bytes",
            body.len()
        )));
    }
    if body.len() > expected {
        return Err(malformed(format!(
            "{} trailing bytes after the edge section",
            body.len() - expected
        )));
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[k / 6] - OFFSET;
            if (chunk >> (5 - k % 6)) & 1 == 1 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[expected - 1] - OFFSET;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(malformed("nonzero padding bits"));
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// Reads newline-delimited graph6, skipping blank lines. Stops at the first I/O error.
pub fn read_graph6_lines<R: BufRead>(reader: R) -> impl Iterator<Item = std::io::Result<(String, Result<Graph>)>> {
    reader.lines().filter_map(|line| match line {
        Err(e) => Some(Err(e)),
        Ok(line) => {
            let trimmed = line.trim();
            if trimmed.is_empty() {
                None
            } else {
                let parsed = from_graph6(trimmed);
                Some(Ok((trimmed.to_string(), parsed)))
            }
        }
    })
}
