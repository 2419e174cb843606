use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::generate::enumerate_graphs;
use super::verify::EXHAUSTIVE_LIMIT;
use super::{guard, EnumerationError};
use crate::format::{encode_digraph6, encode_graph6};
use crate::graph::OrientedGraph;
use crate::invariants::alpha;
use crate::linalg::skew_rank;
use crate::radical::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Expression {
    #[serde(rename = "sr")]
    Sr,
    #[serde(rename = "sr+2a")]
    SrPlusTwoAlpha,
    #[serde(rename = "sr+a")]
    SrPlusAlpha,
    #[serde(rename = "sr-a")]
    SrMinusAlpha,
    #[serde(rename = "sr/a")]
    SrOverAlpha,
    #[serde(rename = "sr*a")]
    SrTimesAlpha,
}

impl Expression {
    pub const ALL: [Expression; 6] = [
        Expression::Sr,
        Expression::SrPlusTwoAlpha,
        Expression::SrPlusAlpha,
        Expression::SrMinusAlpha,
        Expression::SrOverAlpha,
        Expression::SrTimesAlpha,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Expression::Sr => "sr",
            Expression::SrPlusTwoAlpha => "sr+2a",
            Expression::SrPlusAlpha => "sr+a",
            Expression::SrMinusAlpha => "sr-a",
            Expression::SrOverAlpha => "sr/a",
            Expression::SrTimesAlpha => "sr*a",
        }
    }

    /// `alpha` is positive for every graph with a vertex.
    pub fn eval(self, sr: usize, alpha: usize) -> Rational {
        let (s, a) = (sr as i64, alpha as i64);
        match self {
            Expression::Sr => Rational::from_integer(s),
            Expression::SrPlusTwoAlpha => Rational::from_integer(s + 2 * a),
            Expression::SrPlusAlpha => Rational::from_integer(s + a),
            Expression::SrMinusAlpha => Rational::from_integer(s - a),
            Expression::SrOverAlpha => Rational::new(s, a),
            Expression::SrTimesAlpha => Rational::from_integer(s * a),
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Expression {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .replace("alpha", "a")
            .replace('α', "a")
            .replace('·', "*");
        Expression::ALL
            .into_iter()
            .find(|e| e.label() == compact)
            .ok_or_else(|| {
                format!(
                    "unknown expression {s:?}; expected one of sr, sr+2a, sr+a, sr-a, sr/a, sr*a"
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Min,
    Max,
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(Direction::Min),
            "max" => Ok(Direction::Max),
            _ => Err(format!("unknown direction {s:?}; expected min or max")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub graph6: String,
    pub digraph6: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub expression: Expression,
    pub direction: Direction,
    pub n: usize,
    pub value: Rational,
    /// Every (graph, orientation) pair attaining `value`.
    pub witnesses: Vec<Witness>,
}

fn better(direction: Direction, candidate: Rational, incumbent: Rational) -> bool {
    match direction {
        Direction::Min => candidate < incumbent,
        Direction::Max => candidate > incumbent,
    }
}

/// Sweeps every orientation of every graph on `n` vertices.
pub fn search_extremal(
    expression: Expression,
    direction: Direction,
    n: usize,
    connected_only: bool,
) -> Result<ExtremalResult, EnumerationError> {
    guard("n", n, EXHAUSTIVE_LIMIT)?;
    if n == 0 {
        return Err(EnumerationError::Guard {
            what: "n (minimum 1)",
            value: 0,
            limit: 1,
        });
    }
    let graphs = enumerate_graphs(n, connected_only)?;
    let per_graph: Vec<_> = graphs
        .iter()
        .map(|g| {
            let a = alpha(g);
            let mut best: Option<Rational> = None;
            let mut hits = Vec::new();
            for mask in 0..1u64 << g.m() {
                let og = OrientedGraph::from_mask(g.clone(), mask);
                let v = expression.eval(skew_rank(&og), a);
                match best {
                    Some(b) if better(direction, b, v) => continue,
                    Some(b) if b == v => {}
                    _ => {
                        best = Some(v);
                        hits.clear();
                    }
                }
                hits.push(og);
            }
            (best.expect("at least one orientation"), hits)
        })
        .collect();
    let value = per_graph
        .iter()
        .map(|(v, _)| *v)
        .reduce(|a, b| if better(direction, b, a) { b } else { a })
        .expect("at least one graph");
    let witnesses = per_graph
        .into_iter()
        .filter(|(v, _)| *v == value)
        .flat_map(|(_, hits)| hits)
        .map(|og| Witness {
            graph6: encode_graph6(og.underlying()),
            digraph6: encode_digraph6(&og),
        })
        .collect();
    Ok(ExtremalResult {
        expression,
        direction,
        n,
        value,
        witnesses,
    })
}
