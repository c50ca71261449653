//! graph6 encoding (McKay's format): size header, then the upper triangle
//! of the adjacency matrix in column order, six bits per printable byte
//! offset by 63.

use thiserror::Error;

use crate::graph::Graph;

const OPTIONAL_HEADER: &str = ">>graph6<<";

/// Largest order representable with the 4-byte size field.
const SHORT_LIMIT: usize = 258_047;
/// Largest order representable at all (36-bit size field).
const LONG_LIMIT: usize = (1 << 36) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph6 parse error at byte {offset}: {reason}")]
pub struct Graph6Error {
    pub offset: usize,
    pub reason: String,
}

fn fail(offset: usize, reason: impl Into<String>) -> Graph6Error {
    Graph6Error {
        offset,
        reason: reason.into(),
    }
}

fn sextet(bytes: &[u8], at: usize) -> Result<u64, Graph6Error> {
    match bytes.get(at) {
        None => Err(fail(at, "unexpected end of input")),
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(&b) => Err(fail(at, format!("byte 0x{b:02x} outside the range 63..=126"))),
    }
}

/// Reads the size field; returns (order, bytes consumed).
fn parse_order(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let first = sextet(bytes, 0)?;
    if first < 63 {
        return Ok((first as usize, 1));
    }
    let width = if bytes.get(1) == Some(&126) { 6 } else { 3 };
    let start = if width == 6 { 2 } else { 1 };
    let mut n = 0u64;
    for i in 0..width {
        n = n << 6 | sextet(bytes, start + i)?;
    }
    Ok((n as usize, start + width))
}

/// Parses one graph6 line. Surrounding whitespace and the optional
/// `>>graph6<<` header are accepted. Offsets in errors are relative to the
/// start of the encoding proper.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim();
    let text = text.strip_prefix(OPTIONAL_HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(fail(0, "empty input"));
    }
    let (n, head) = parse_order(bytes)?;
    if n == 0 {
        return Err(fail(0, "graphs of order 0 are not supported"));
    }
    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() < head + need {
        return Err(fail(bytes.len(), format!("payload truncated: expected {need} bytes after the header")));
    }
    if bytes.len() > head + need {
        return Err(fail(head + need, "trailing bytes after payload"));
    }
    let mut payload = Vec::with_capacity(need);
    for i in 0..need {
        payload.push(sextet(bytes, head + i)?);
    }
    if nbits % 6 != 0 {
        let pad = 6 - nbits % 6;
        if payload[need - 1] & ((1 << pad) - 1) != 0 {
            return Err(fail(head + need - 1, "nonzero padding bits"));
        }
    }
    let bit = |k: usize| payload[k / 6] >> (5 - k % 6) & 1 == 1;
    Ok(Graph::from_fn(n, |i, j| bit(j * (j - 1) / 2 + i)))
}

/// Encodes `g` in graph6 without the optional header or a newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= LONG_LIMIT, "order {n} exceeds the graph6 size field");
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        let width = if n <= SHORT_LIMIT { 3 } else {
            out.push(126);
            6
        };
        for i in (0..width).rev() {
            out.push((n >> (6 * i) & 63) as u8 + 63);
        }
    }
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}
