//! Reading oriented graphs from digraph6 strings and arc-list files.

use std::fs;
use std::path::Path;

use skewrank::format::decode_digraph6;
use skewrank::{FormatError, GraphError, OrientedGraph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("digraph6: {0}")]
    Digraph6(#[from] FormatError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("arc list line {line}: {reason}")]
    ArcList { line: usize, reason: String },
    #[error("arc list: {0}")]
    Graph(#[from] GraphError),
    #[error("give either a digraph6 string or --arcs FILE")]
    Missing,
}

const HEADER: &str = ">>digraph6<<";

pub fn parse_digraph6(text: &str) -> Result<OrientedGraph, InputError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let body = text.strip_prefix(HEADER).unwrap_or(text);
    // offsets refer to the text as given
    let shift = text.len() - body.len();
    decode_digraph6(body).map_err(|e| shift_offset(e, shift).into())
}

fn shift_offset(e: FormatError, by: usize) -> FormatError {
    match e {
        FormatError::BadByte { offset, found } => FormatError::BadByte {
            offset: offset + by,
            found,
        },
        FormatError::Header { offset, reason } => FormatError::Header {
            offset: offset + by,
            reason,
        },
        FormatError::Truncated { offset, expected } => FormatError::Truncated {
            offset: offset + by,
            expected,
        },
        FormatError::Trailing { offset } => FormatError::Trailing {
            offset: offset + by,
        },
        FormatError::Padding { offset } => FormatError::Padding {
            offset: offset + by,
        },
        FormatError::LoopArc { offset, vertex } => FormatError::LoopArc {
            offset: offset + by,
            vertex,
        },
        FormatError::Digon { offset, u, v } => FormatError::Digon {
            offset: offset + by,
            u,
            v,
        },
        other => other,
    }
}

fn numbers(line: &str, lineno: usize) -> Result<(usize, usize), InputError> {
    let err = |reason: &str| InputError::ArcList {
        line: lineno,
        reason: reason.to_owned(),
    };
    let mut it = line.split_whitespace();
    let a = it.next().ok_or_else(|| err("expected two integers"))?;
    let b = it.next().ok_or_else(|| err("expected two integers"))?;
    if it.next().is_some() {
        return Err(err("expected exactly two integers"));
    }
    let a = a
        .parse()
        .map_err(|_| err(&format!("not a vertex index: {a:?}")))?;
    let b = b
        .parse()
        .map_err(|_| err(&format!("not a vertex index: {b:?}")))?;
    Ok((a, b))
}

/// First line `n m`, then `m` lines `tail head`. Blank lines are ignored.
pub fn parse_arc_list(text: &str) -> Result<OrientedGraph, InputError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or(InputError::ArcList {
        line: 1,
        reason: "missing \"n m\" header".into(),
    })?;
    let (n, m) = numbers(header, first)?;
    let mut arcs = Vec::with_capacity(m);
    for (lineno, line) in lines {
        if arcs.len() == m {
            return Err(InputError::ArcList {
                line: lineno,
                reason: format!("more than the declared {m} arcs"),
            });
        }
        arcs.push(numbers(line, lineno)?);
    }
    if arcs.len() != m {
        return Err(InputError::ArcList {
            line: first,
            reason: format!("declared {m} arcs, found {}", arcs.len()),
        });
    }
    Ok(OrientedGraph::from_arcs(n, &arcs)?)
}

pub fn read_input(
    digraph6: Option<&str>,
    arcs: Option<&Path>,
) -> Result<OrientedGraph, InputError> {
    match (digraph6, arcs) {
        (Some(text), None) => parse_digraph6(text),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|source| InputError::Io {
                path: path.display().to_string(),
                source,
            })?;
            parse_arc_list(&text)
        }
        _ => Err(InputError::Missing),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_lists() {
        let g = parse_arc_list("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g.n(), 4);
        let mut arcs: Vec<_> = g.arcs().collect();
        arcs.sort_unstable();
        assert_eq!(arcs, vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(matches!(
            parse_arc_list("3 2\n0 1\n"),
            Err(InputError::ArcList { line: 1, .. })
        ));
        assert!(matches!(
            parse_arc_list("3 1\n0 x\n"),
            Err(InputError::ArcList { line: 2, .. })
        ));
        assert!(matches!(
            parse_arc_list("2 1\n0 0\n"),
            Err(InputError::Graph(_))
        ));
        assert!(matches!(
            parse_arc_list(""),
            Err(InputError::ArcList { .. })
        ));
    }

    #[test]
    fn digraph6_header_is_optional() {
        let a = parse_digraph6("&AO").unwrap();
        let b = parse_digraph6(">>digraph6<<&AO\n").unwrap();
        assert_eq!(a, b);
        match parse_digraph6(">>digraph6<<&A_") {
            Err(InputError::Digraph6(FormatError::LoopArc { offset, .. })) => {
                assert!(offset >= HEADER.len())
            }
            other => panic!("{other:?}"),
        }
    }
}
