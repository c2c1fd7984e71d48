use super::{check_byte, read_size, write_size, CodecError, GRAPH6_HEADER};
use crate::graph::LoopedGraph;

/// Decodes a graph6 line (simple graphs only).
pub fn graph6_decode(s: &str) -> Result<LoopedGraph, CodecError> {
    let s = s.trim();
    let body = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s).as_bytes();
    let (n, used) = read_size(body)?;
    if n == 0 {
        return Err(CodecError::ZeroVertices);
    }
    let payload = &body[used..];
    let needed = (n * (n - 1) / 2).div_ceil(6);
    if payload.len() < needed {
        return Err(CodecError::Truncated { what: "adjacency bits" });
    }
    if payload.len() > needed {
        return Err(CodecError::TrailingData {
            extra: payload.len() - needed,
        });
    }
    for (i, &b) in payload.iter().enumerate() {
        check_byte(used + i, b)?;
    }

    let mut g = LoopedGraph::empty(n)?;
    let mut pos = 0usize;
    for v in 1..n {
        for u in 0..v {
            if (payload[pos / 6] - 63) >> (5 - pos % 6) & 1 == 1 {
                g.set(u, v, true);
            }
            pos += 1;
        }
    }
    Ok(g)
}

/// Encodes a simple graph as graph6 (no header). Loops are an error.
pub fn graph6_encode(g: &LoopedGraph) -> Result<String, CodecError> {
    if let Some(vertex) = g.loops().next() {
        return Err(CodecError::LoopInGraph6 { vertex });
    }
    let n = g.n();
    let mut out = Vec::new();
    write_size(&mut out, n);
    let bits: Vec<bool> = (1..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .map(|(u, v)| g.entry(u, v))
        .collect();
    out.extend(bits.chunks(6).map(|c| {
        let word = c.iter().fold(0u8, |acc, &b| (acc << 1) | u8::from(b));
        63 + (word << (6 - c.len()))
    }));
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_txt_example() {
        // n = 5, edges 0-2 0-4 1-3 3-4
        let g = LoopedGraph::build(5, &[(0, 2), (0, 4), (1, 3), (3, 4)], &[]).unwrap();
        assert_eq!(graph6_encode(&g).unwrap(), "DQc");
        assert_eq!(graph6_decode("DQc").unwrap(), g);
        assert_eq!(graph6_decode(">>graph6<<DQc").unwrap(), g);
    }

    #[test]
    fn five_cycle() {
        let c5 = LoopedGraph::from_fn(5, |u, v| v == u + 1 || (u == 0 && v == 4)).unwrap();
        assert_eq!(graph6_encode(&c5).unwrap(), "Dhc");
        assert_eq!(graph6_decode("Dhc").unwrap(), c5);
    }

    #[test]
    fn loops_rejected() {
        let p4 = LoopedGraph::build(4, &[(0, 1), (1, 2), (2, 3)], &[0, 3]).unwrap();
        assert_eq!(graph6_encode(&p4), Err(CodecError::LoopInGraph6 { vertex: 0 }));
    }

    #[test]
    fn exhaustive_round_trip() {
        for n in 1..=5usize {
            let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << slots.len()) {
                let edges: Vec<_> = slots
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = LoopedGraph::build(n, &edges, &[]).unwrap();
                assert_eq!(graph6_decode(&graph6_encode(&g).unwrap()).unwrap(), g);
            }
        }
    }

    #[test]
    fn length_errors() {
        assert!(matches!(graph6_decode("DQ"), Err(CodecError::Truncated { .. })));
        assert!(matches!(
            graph6_decode("DQcc"),
            Err(CodecError::TrailingData { extra: 1 })
        ));
        assert!(matches!(
            graph6_decode("D Q"),
            Err(CodecError::ByteOutOfRange { offset: 1, byte: 32 })
        ));
    }
}
