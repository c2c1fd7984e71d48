//! graph6 and sparse6 interchange, and the registry of published search graphs.
//!
//! Both formats follow McKay's `formats.txt`. sparse6 carries loops, graph6
//! only simple graphs. Files hold one graph per line.

mod graph6;
mod registry;
mod sparse6;

pub use graph6::{graph6_decode, graph6_encode};
pub use registry::{search_graphs, Certificate, EntrySource, SearchGraphEntry, SearchGraphRegistry};
pub use sparse6::{sparse6_decode, sparse6_encode};

use thiserror::Error;

use crate::graph::{GraphError, LoopedGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("missing format prefix: expected {expected}")]
    BadHeader { expected: &'static str },
    #[error("byte {byte} at offset {offset} is outside the printable range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("input ends inside the {what}")]
    Truncated { what: &'static str },
    #[error("{extra} unexpected trailing byte(s)")]
    TrailingData { extra: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("repeated edge {u}-{v}: multigraphs are not supported")]
    MultiEdge { u: usize, v: usize },
    #[error("graph6 cannot represent loops (vertex {vertex} has one)")]
    LoopInGraph6 { vertex: usize },
    #[error("the empty graph on zero vertices is not a LoopedGraph")]
    ZeroVertices,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) const SPARSE6_HEADER: &str = ">>sparse6<<";
pub(crate) const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes either format, picking sparse6 when the line starts with `:`.
pub fn decode_any(line: &str) -> Result<LoopedGraph, CodecError> {
    let body = line.trim();
    if body.starts_with(':') || body.starts_with(SPARSE6_HEADER) {
        sparse6_decode(body)
    } else {
        graph6_decode(body)
    }
}

/// Decodes every nonblank line of `text`.
pub fn decode_lines(text: &str) -> Result<Vec<LoopedGraph>, CodecError> {
    text.lines().filter(|l| !l.trim().is_empty()).map(decode_any).collect()
}

/// Encodes the vertex count `N(n)`.
pub(crate) fn write_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Reads `N(n)` and returns it with the number of bytes consumed.
pub(crate) fn read_size(bytes: &[u8]) -> Result<(usize, usize), CodecError> {
    let first = *bytes.first().ok_or(CodecError::Truncated { what: "size field" })?;
    check_byte(0, first)?;
    if first < 126 {
        return Ok(((first - 63) as usize, 1));
    }
    let (start, len) = if bytes.get(1) == Some(&126) { (2, 6) } else { (1, 3) };
    if bytes.len() < start + len {
        return Err(CodecError::Truncated { what: "size field" });
    }
    let mut n = 0usize;
    for (offset, &b) in bytes.iter().enumerate().skip(start).take(len) {
        check_byte(offset, b)?;
        n = (n << 6) | (b - 63) as usize;
    }
    Ok((n, start + len))
}

pub(crate) fn check_byte(offset: usize, byte: u8) -> Result<(), CodecError> {
    if (63..=126).contains(&byte) {
        Ok(())
    } else {
        Err(CodecError::ByteOutOfRange { offset, byte })
    }
}
