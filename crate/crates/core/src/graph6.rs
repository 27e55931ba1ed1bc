//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix, column by column, in 6-bit groups offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(1 + (n * (n - 1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

fn bad(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Parses one graph6 line. Surrounding whitespace and an optional
/// `>>graph6<<` prefix are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let lead = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut base = lead;
    if let Some(rest) = body.strip_prefix(">>graph6<<") {
        body = rest;
        base += ">>graph6<<".len();
    }
    let bytes = body.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(bad(base, "empty input"));
    };
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(bad(base + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let (n, header) = if first == 126 {
        if bytes.get(1) == Some(&126) {
            return Err(bad(base + 1, "8-byte size header is beyond the vertex cap"));
        }
        if bytes.len() < 4 {
            return Err(bad(base + bytes.len(), "truncated size header"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, 4)
    } else {
        ((first - 63) as usize, 1)
    };
    if n == 0 {
        return Err(bad(base, "zero vertices"));
    }
    if n > MAX_VERTICES {
        return Err(bad(
            base,
            format!("{n} vertices exceeds the cap of {MAX_VERTICES}"),
        ));
    }
    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    let data = &bytes[header..];
    if data.len() != need {
        let at = base + header + data.len().min(need);
        return Err(bad(
            at,
            format!("expected {need} data bytes for n={n}, found {}", data.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = data[need - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(bad(base + header + need - 1, "non-zero padding bits"));
        }
    }
    Ok(g)
}

/// Parses a file body with one graph per line, skipping blank lines.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        if !line.trim().is_empty() {
            out.push(parse_graph6(line).map_err(|e| match e {
                Error::Graph6 { offset: o, reason } => Error::Graph6 {
                    offset: offset + o,
                    reason,
                },
                other => other,
            })?);
        }
        offset += line.len();
    }
    Ok(out)
}
