//! The `analyze` report.

use std::collections::BTreeMap;

use serde::Serialize;
use skewrank::format::{encode_digraph6, encode_graph6};
use skewrank::invariants::{basic_profile, independence_number, InvariantProfile};
use skewrank::linalg::skew_rank;
use skewrank::structure::{classify_cycle, cycle_decomposition, CycleKind};
use skewrank::theorems::{
    is_lower_optimal, AlphaBounds, BoundReport, GraphFacts, LowerOptimalVerdict,
};
use skewrank::{ExactRadical, OrientedGraph};

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub digraph6: String,
    pub graph6: String,
}

#[derive(Debug, Serialize)]
pub struct CycleSummary {
    /// Cycle blocks in cycle order from their smallest vertex.
    pub cycles: Vec<Vec<usize>>,
    pub kinds: Vec<CycleKind>,
    pub signs: Vec<i8>,
    pub pairwise_disjoint: bool,
    pub t_graph6: Option<String>,
    pub gamma_graph6: Option<String>,
    pub alpha_t: Option<usize>,
    pub alpha_gamma: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct Theorems {
    pub lower_optimal: LowerOptimalVerdict,
    pub matching_bound: BoundReport,
    /// Sum, difference and ratio bounds, in that order.
    pub mixed_bounds: [BoundReport; 3],
    pub alpha_bounds: AlphaBounds,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub profile: InvariantProfile,
    pub skew_rank: usize,
    pub independent_set: Vec<usize>,
    pub cycle_structure: CycleSummary,
    /// `sr + 2α = 2n - 2d`, meaningful for any input.
    pub is_lower_optimal: bool,
    /// `None` for disconnected input; the bounds are stated for connected
    /// graphs.
    pub theorems: Option<Theorems>,
    /// Decimal renderings of the exact bounds, only with `--float-view`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approximate: Option<BTreeMap<String, f64>>,
}

fn floats(t: &Theorems) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    let mut put = |name: String, r: &ExactRadical| {
        out.insert(name, r.approx());
    };
    put(
        format!("{}.rhs", t.matching_bound.theorem_id),
        &t.matching_bound.rhs,
    );
    for b in &t.mixed_bounds {
        put(format!("{}.rhs", b.theorem_id), &b.rhs);
    }
    put("5.1.lower".into(), &t.alpha_bounds.lower);
    put("5.1.upper".into(), &t.alpha_bounds.upper);
    out
}

pub fn analyze(g: &OrientedGraph, float_view: bool) -> AnalysisReport {
    let u = g.underlying();
    let sr = skew_rank(g);
    let cs = cycle_decomposition(u);
    let classes: Vec<_> = cs
        .cycles
        .iter()
        .map(|c| classify_cycle(g, c).expect("cycle of the input"))
        .collect();
    let theorems = GraphFacts::new(u).ok().map(|facts| Theorems {
        lower_optimal: facts.lower_optimal(g, sr),
        matching_bound: facts.matching_bound(g, sr),
        mixed_bounds: facts.mixed_bounds(sr),
        alpha_bounds: facts.alpha_bounds(),
    });
    let cycle_structure = CycleSummary {
        kinds: classes.iter().map(|c| c.kind).collect(),
        signs: classes.iter().map(|c| c.sign).collect(),
        pairwise_disjoint: cs.pairwise_disjoint,
        t_graph6: cs.t_graph.as_ref().map(encode_graph6),
        gamma_graph6: cs.gamma_graph.as_ref().map(encode_graph6),
        alpha_t: cs.t_graph.as_ref().map(skewrank::alpha),
        alpha_gamma: cs.gamma_graph.as_ref().map(skewrank::alpha),
        cycles: cs.cycles,
    };
    AnalysisReport {
        input: InputEcho {
            digraph6: encode_digraph6(g),
            graph6: encode_graph6(u),
        },
        profile: basic_profile(u).expect("within the vertex limit"),
        skew_rank: sr,
        independent_set: independence_number(u)
            .expect("within the vertex limit")
            .witness,
        cycle_structure,
        is_lower_optimal: is_lower_optimal(g),
        approximate: theorems.as_ref().filter(|_| float_view).map(floats),
        theorems,
    }
}
