use super::{check_byte, read_size, write_size, CodecError, SPARSE6_HEADER};
use crate::graph::LoopedGraph;

/// Bits needed to write `n − 1` in binary (0 for `n = 1`, as nauty does).
fn width(n: usize) -> usize {
    (usize::BITS - (n.saturating_sub(1)).leading_zeros()) as usize
}

/// Decodes a sparse6 line. An edge with equal endpoints is a loop.
///
/// Trailing padding may use either the plain all-ones rule or the variant
/// that starts with a 0 bit.
pub fn sparse6_decode(s: &str) -> Result<LoopedGraph, CodecError> {
    let s = s.trim();
    let s = s.strip_prefix(SPARSE6_HEADER).unwrap_or(s);
    let body = s
        .strip_prefix(':')
        .ok_or(CodecError::BadHeader { expected: "':'" })?
        .as_bytes();
    let (n, used) = read_size(body)?;
    if n == 0 {
        return Err(CodecError::ZeroVertices);
    }
    let payload = &body[used..];
    for (i, &b) in payload.iter().enumerate() {
        check_byte(used + 1 + i, b)?;
    }

    let k = width(n);
    let total = payload.len() * 6;
    let bit = |pos: usize| (payload[pos / 6] - 63) >> (5 - pos % 6) & 1;
    let mut g = LoopedGraph::empty(n)?;
    let mut v = 0usize;
    let mut pos = 0usize;
    while pos + 1 + k <= total {
        let start = pos;
        let b = bit(pos);
        let x = (pos + 1..pos + 1 + k).fold(0usize, |acc, p| (acc << 1) | bit(p) as usize);
        pos += 1 + k;
        if b == 1 {
            v += 1;
        }
        if x >= n || v >= n {
            // legitimate only inside the final padding, which is under 6 bits
            if total - start >= 6 {
                return Err(CodecError::VertexOutOfRange { vertex: x.max(v), n });
            }
            break;
        }
        if x > v {
            v = x;
        } else {
            if g.entry(x, v) {
                return Err(CodecError::MultiEdge { u: x, v });
            }
            g.set(x, v, true);
        }
    }
    Ok(g)
}

/// Encodes `g` as sparse6 (no header), edges sorted by larger endpoint.
pub fn sparse6_encode(g: &LoopedGraph) -> String {
    let n = g.n();
    let k = width(n);
    let mut bits: Vec<bool> = Vec::new();
    let push_x = |bits: &mut Vec<bool>, x: usize| {
        for shift in (0..k).rev() {
            bits.push((x >> shift) & 1 == 1);
        }
    };

    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (v, u))
        .chain(g.loops().map(|v| (v, v)))
        .collect();
    edges.sort_unstable();
    let mut current = 0usize;
    for (v, u) in edges {
        if v == current {
            bits.push(false);
            push_x(&mut bits, u);
        } else if v == current + 1 {
            current = v;
            bits.push(true);
            push_x(&mut bits, u);
        } else {
            current = v;
            bits.push(true);
            push_x(&mut bits, v);
            bits.push(false);
            push_x(&mut bits, u);
        }
    }

    let pad = (6 - bits.len() % 6) % 6;
    // all-ones padding would decode as a loop on n−1 when the last vertex
    // reached is n−2 and n is a power of two; start with a 0 bit instead
    if k < 6 && n == 1 << k && pad > k && n >= 2 && current == n - 2 {
        bits.push(false);
        bits.extend(std::iter::repeat_n(true, pad - 1));
    } else {
        bits.extend(std::iter::repeat_n(true, pad));
    }

    let mut out = vec![b':'];
    write_size(&mut out, n);
    out.extend(
        bits.chunks(6)
            .map(|c| 63 + c.iter().fold(0u8, |acc, &b| (acc << 1) | u8::from(b))),
    );
    String::from_utf8(out).expect("sparse6 output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_txt_example() {
        // n = 7, edges 0-1 0-2 1-2 5-6
        let g = sparse6_decode(":Fa@x^").unwrap();
        let expected = LoopedGraph::build(7, &[(0, 1), (0, 2), (1, 2), (5, 6)], &[]).unwrap();
        assert_eq!(g, expected);
        assert_eq!(sparse6_encode(&expected), ":Fa@x^");
        assert_eq!(sparse6_decode(">>sparse6<<:Fa@x^\n").unwrap(), expected);
    }

    #[test]
    fn single_vertex() {
        assert_eq!(sparse6_decode(":@").unwrap(), LoopedGraph::empty(1).unwrap());
        let looped = LoopedGraph::build(1, &[], &[0]).unwrap();
        assert_eq!(sparse6_decode(&sparse6_encode(&looped)).unwrap(), looped);
    }

    #[test]
    fn loops_survive() {
        let p4 = LoopedGraph::build(4, &[(0, 1), (1, 2), (2, 3)], &[0, 3]).unwrap();
        let s = sparse6_encode(&p4);
        assert_eq!(sparse6_decode(&s).unwrap(), p4);
    }

    #[test]
    fn padding_special_case() {
        // n = 4 (a power of two), last edge ends at vertex 2 = n − 2,
        // nine data bits leave three bits of padding
        let g = LoopedGraph::build(4, &[(0, 1), (0, 2), (1, 2)], &[]).unwrap();
        let s = sparse6_encode(&g);
        assert_eq!(s, ":CcJ");
        assert_eq!(sparse6_decode(&s).unwrap(), g);
        // plain all-ones padding reads back as a loop on vertex 3
        let naive = sparse6_decode(":CcN").unwrap();
        assert!(naive.has_loop(3));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(sparse6_decode("Fa@x^"), Err(CodecError::BadHeader { expected: "':'" }));
        assert!(matches!(
            sparse6_decode(":Fa@x\x7f"),
            Err(CodecError::ByteOutOfRange { .. })
        ));
        assert!(matches!(sparse6_decode(":"), Err(CodecError::Truncated { .. })));
        assert!(matches!(sparse6_decode(":~A"), Err(CodecError::Truncated { .. })));
        // n = 2, k = 1: pairs (0,0) (0,0) repeat the loop on vertex 0
        assert!(matches!(
            sparse6_decode(":A?"),
            Err(CodecError::MultiEdge { u: 0, v: 0 })
        ));
        // n = 3, k = 2: "011" names vertex 3 well before the padding
        assert!(matches!(
            sparse6_decode(":BW?"),
            Err(CodecError::VertexOutOfRange { .. })
        ));
    }
}
