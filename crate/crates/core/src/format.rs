//! graph6 and digraph6 text formats.
//!
//! Both encode the vertex count with the standard `N(n)` prefix and pack the
//! adjacency bits six per printable byte (value + 63), high bit first, padded
//! with zeros. graph6 lists the upper triangle column by column; digraph6 is
//! prefixed with `&` and lists the full matrix row by row.

use thiserror::Error;

use crate::graph::{bit, Graph, GraphError, OrientedGraph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("byte {offset}: character {found:?} is outside the printable range '?'..='~'")]
    BadByte { offset: usize, found: char },
    #[error("byte {offset}: malformed header: {reason}")]
    Header { offset: usize, reason: &'static str },
    #[error("byte {offset}: payload truncated, expected {expected} bytes")]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: trailing data after payload")]
    Trailing { offset: usize },
    #[error("byte {offset}: nonzero padding bits")]
    Padding { offset: usize },
    #[error("byte {offset}: loop arc at vertex {vertex}")]
    LoopArc { offset: usize, vertex: usize },
    #[error("byte {offset}: arcs {u}->{v} and {v}->{u} both present, not an orientation")]
    Digon { offset: usize, u: usize, v: usize },
    #[error("{0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn push_size(out: &mut String, n: usize) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    }
}

fn push_bits(out: &mut String, bits: impl Iterator<Item = bool>) {
    let mut acc = 0u8;
    let mut filled = 0;
    for b in bits {
        acc = acc << 1 | b as u8;
        filled += 1;
        if filled == 6 {
            out.push((acc + 63) as char);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u8, FormatError> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(FormatError::BadByte {
            offset,
            found: b as char,
        }),
        None => Err(FormatError::Header {
            offset,
            reason: "missing vertex count",
        }),
    }
}

/// Parses `N(n)` at `start`; returns `(n, offset after header)`.
fn read_size(bytes: &[u8], start: usize) -> Result<(usize, usize), FormatError> {
    let first = sextet(bytes, start)?;
    if first != 63 {
        return Ok((first as usize, start + 1));
    }
    let long = bytes.get(start + 1) == Some(&b'~');
    let (from, count) = if long { (start + 2, 6) } else { (start + 1, 3) };
    if bytes.len() < from + count {
        return Err(FormatError::Header {
            offset: bytes.len(),
            reason: "truncated vertex count",
        });
    }
    let mut n = 0usize;
    for i in 0..count {
        n = n << 6 | sextet(bytes, from + i)? as usize;
    }
    let minimal = if long { n > 258_047 } else { n > 62 };
    if !minimal {
        return Err(FormatError::Header {
            offset: start,
            reason: "vertex count not minimally encoded",
        });
    }
    Ok((n, from + count))
}

/// Reads `count` payload bits beginning at `start`, requiring exact length
/// and zero padding.
fn read_bits(bytes: &[u8], start: usize, count: usize) -> Result<Vec<bool>, FormatError> {
    let need = count.div_ceil(6);
    for offset in start..bytes.len() {
        sextet(bytes, offset)?;
    }
    if bytes.len() < start + need {
        return Err(FormatError::Truncated {
            offset: bytes.len(),
            expected: need,
        });
    }
    if bytes.len() > start + need {
        return Err(FormatError::Trailing {
            offset: start + need,
        });
    }
    let mut out = Vec::with_capacity(need * 6);
    for i in 0..need {
        let s = bytes[start + i] - 63;
        for k in (0..6).rev() {
            out.push(s >> k & 1 == 1);
        }
    }
    if out[count..].iter().any(|&b| b) {
        return Err(FormatError::Padding {
            offset: start + need - 1,
        });
    }
    out.truncate(count);
    Ok(out)
}

fn bit_offset(start: usize, index: usize) -> usize {
    start + index / 6
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    push_size(&mut out, n);
    let bits = (1..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .map(|(i, j)| g.has_edge(i, j));
    push_bits(&mut out, bits);
    out
}

pub fn decode_graph6(text: &str) -> Result<Graph, FormatError> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    if bytes[0] == b'>' || bytes[0] == b'&' || bytes[0] == b':' {
        return Err(FormatError::Header {
            offset: 0,
            reason: "graph6 words start with the vertex count",
        });
    }
    let (n, start) = read_size(bytes, 0)?;
    if n > MAX_VERTICES {
        return Err(FormatError::TooLarge(n));
    }
    let payload = read_bits(bytes, start, n * n.saturating_sub(1) / 2)?;
    let mut adj = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if payload[k] {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            k += 1;
        }
    }
    Ok(Graph::from_adjacency(adj))
}

pub fn encode_digraph6(g: &OrientedGraph) -> String {
    let n = g.n();
    let mut out = String::from("&");
    push_size(&mut out, n);
    let mut rows = vec![0u64; n];
    for (t, h) in g.arcs() {
        rows[t] |= bit(h);
    }
    let bits = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| rows[i] & bit(j) != 0);
    push_bits(&mut out, bits);
    out
}

pub fn decode_digraph6(text: &str) -> Result<OrientedGraph, FormatError> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    if bytes[0] != b'&' {
        return Err(FormatError::Header {
            offset: 0,
            reason: "digraph6 words start with '&'",
        });
    }
    let (n, start) = read_size(bytes, 1)?;
    if n > MAX_VERTICES {
        return Err(FormatError::TooLarge(n));
    }
    let payload = read_bits(bytes, start, n * n)?;
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !payload[i * n + j] {
                continue;
            }
            if i == j {
                return Err(FormatError::LoopArc {
                    offset: bit_offset(start, i * n + j),
                    vertex: i,
                });
            }
            if payload[j * n + i] {
                let later = (i * n + j).max(j * n + i);
                return Err(FormatError::Digon {
                    offset: bit_offset(start, later),
                    u: i.min(j),
                    v: i.max(j),
                });
            }
            arcs.push((i, j));
        }
    }
    Ok(OrientedGraph::from_arcs(n, &arcs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    #[test]
    fn graph6_examples() {
        assert_eq!(decode_graph6("A_").unwrap(), complete(2));
        assert_eq!(decode_graph6("Bw").unwrap(), complete(3));
        let g = decode_graph6("A?").unwrap();
        assert_eq!((g.n(), g.m()), (2, 0));
        for word in ["A_", "Bw", "A?", "?", "@", "DQc"] {
            assert_eq!(encode_graph6(&decode_graph6(word).unwrap()), word);
        }
    }

    #[test]
    fn graph6_known_words() {
        // P_4 edges 01 12 23 in column order (0,1)(0,2)(1,2)(0,3)(1,3)(2,3): 101001
        assert_eq!(encode_graph6(&path(4)), "Ch");
        // C_5: (0,1)(1,2)(2,3)(3,4)(0,4)
        assert_eq!(encode_graph6(&cycle(5)), "Dhc");
    }

    #[test]
    fn graph6_errors() {
        assert_eq!(decode_graph6(""), Err(FormatError::Empty));
        assert!(matches!(
            decode_graph6("B"),
            Err(FormatError::Truncated { .. })
        ));
        assert!(matches!(
            decode_graph6("Bww"),
            Err(FormatError::Trailing { offset: 2 })
        ));
        assert!(matches!(
            decode_graph6("A`"),
            Err(FormatError::Padding { offset: 1 })
        ));
        assert!(matches!(
            decode_graph6("B\n"),
            Err(FormatError::BadByte { offset: 1, .. })
        ));
        assert!(matches!(
            decode_graph6(">>graph6<<A_"),
            Err(FormatError::Header { offset: 0, .. })
        ));
    }

    #[test]
    fn graph6_long_header() {
        let g = complete(63);
        let word = encode_graph6(&g);
        assert!(word.starts_with("~??~"));
        assert_eq!(decode_graph6(&word).unwrap(), g);
        let g64 = Graph::empty(64);
        assert_eq!(decode_graph6(&encode_graph6(&g64)).unwrap(), g64);
        // 62 must use the short header
        assert!(matches!(
            decode_graph6("~??}"),
            Err(FormatError::Header { .. })
        ));
    }

    #[test]
    fn digraph6_examples() {
        let g = decode_digraph6("&AO").unwrap();
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(encode_digraph6(&g), "&AO");
        assert!(matches!(
            decode_digraph6("AO"),
            Err(FormatError::Header { offset: 0, .. })
        ));
        // 0->1 and 1->0: bits 0110 -> 011000 = 24 -> 'W'
        assert!(matches!(
            decode_digraph6("&AW"),
            Err(FormatError::Digon { u: 0, v: 1, .. })
        ));
        // loop at 0: 100000 -> '_'
        assert!(matches!(
            decode_digraph6("&A_"),
            Err(FormatError::LoopArc { vertex: 0, .. })
        ));
    }

    #[test]
    fn digraph6_reversed_arc() {
        let g = OrientedGraph::from_arcs(2, &[(1, 0)]).unwrap();
        // bits 0010 -> 001000 = 8 -> 'G'
        assert_eq!(encode_digraph6(&g), "&AG");
        assert_eq!(decode_digraph6("&AG").unwrap(), g);
    }
}
