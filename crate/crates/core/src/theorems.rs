//! Exact evaluation of the skew-rank bounds and their equality cases.
//!
//! Every bound is decided twice where a characterisation exists: once by
//! plain arithmetic on the invariants, once by the structural conditions
//! (cycle disjointness, cycle orientation, independence numbers of `T_G`
//! and `Γ_G`). The verdict records both and whether they agree.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, bits, complete, cycle, star, Graph, GraphError, OrientedGraph};
use crate::invariants::{alpha, cycle_space_dimension, matching_number};
use crate::iso::are_isomorphic;
use crate::linalg::skew_rank;
use crate::radical::{sign_of, ExactRadical, Rational};
use crate::structure::{
    blocks, classify_cycle, cycle_decomposition, pendant_cycles, CycleKind, CycleStructure,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("the bound is stated for connected graphs")]
    Disconnected,
    #[error("need 1 <= alpha <= n, got alpha = {alpha} with n = {n}")]
    AlphaOutOfRange { n: usize, alpha: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "2.1")]
    LowerOptimal,
    #[serde(rename = "2.2")]
    Bipartite,
    #[serde(rename = "2.3")]
    Matching,
    #[serde(rename = "2.4")]
    SumBound,
    #[serde(rename = "2.5")]
    DifferenceBound,
    #[serde(rename = "2.6")]
    RatioBound,
    #[serde(rename = "5.1")]
    AlphaBounds,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::LowerOptimal,
        TheoremId::Bipartite,
        TheoremId::Matching,
        TheoremId::SumBound,
        TheoremId::DifferenceBound,
        TheoremId::RatioBound,
        TheoremId::AlphaBounds,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TheoremId::LowerOptimal => "2.1",
            TheoremId::Bipartite => "2.2",
            TheoremId::Matching => "2.3",
            TheoremId::SumBound => "2.4",
            TheoremId::DifferenceBound => "2.5",
            TheoremId::RatioBound => "2.6",
            TheoremId::AlphaBounds => "5.1",
        }
    }

    /// Whether the claim depends on the orientation.
    pub fn is_oriented(self) -> bool {
        self != TheoremId::AlphaBounds
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| {
                format!("unknown theorem {s:?}; expected one of 2.1 2.2 2.3 2.4 2.5 2.6 5.1")
            })
    }
}

/// Orientation-independent quantities of a connected graph, computed once
/// and reused across all of its orientations.
#[derive(Debug, Clone)]
pub struct GraphFacts {
    pub graph: Graph,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub alpha: usize,
    pub alpha_prime: usize,
    pub bipartite: bool,
    pub cycles: CycleStructure,
    /// α(T_G), α(Γ_G), α'(T_G), α'(Γ_G) when the cycles are disjoint.
    pub alpha_t: Option<usize>,
    pub alpha_gamma: Option<usize>,
    pub matching_t: Option<usize>,
    pub matching_gamma: Option<usize>,
    /// `G ≅ S_n` or `G ≅ C_3`.
    pub star_or_triangle: bool,
}

impl GraphFacts {
    pub fn new(g: &Graph) -> Result<Self, TheoremError> {
        if !g.is_connected() {
            return Err(TheoremError::Disconnected);
        }
        let n = g.n();
        let cycles = cycle_decomposition(g);
        let t = cycles.t_graph.as_ref();
        let gamma = cycles.gamma_graph.as_ref();
        let star_or_triangle =
            (n >= 1 && are_isomorphic(g, &star(n))) || (n == 3 && are_isomorphic(g, &cycle(3)));
        Ok(Self {
            graph: g.clone(),
            n,
            m: g.m(),
            d: cycle_space_dimension(g),
            alpha: alpha(g),
            alpha_prime: matching_number(g),
            bipartite: g.is_bipartite(),
            alpha_t: t.map(alpha),
            alpha_gamma: gamma.map(alpha),
            matching_t: t.map(matching_number),
            matching_gamma: gamma.map(matching_number),
            cycles,
            star_or_triangle,
        })
    }

    /// `K = 4n(n-1) - 8m + 1`, so that `√(n(n-1) - 2m + 1/4) = √K / 2`.
    pub fn radicand(&self) -> i64 {
        let (n, m) = (self.n as i64, self.m as i64);
        4 * n * (n - 1) - 8 * m + 1
    }

    pub fn cycle_kinds(&self, g: &OrientedGraph) -> Vec<CycleKind> {
        self.cycles
            .cycles
            .iter()
            .map(|c| {
                classify_cycle(g, c)
                    .expect("cycle of the underlying graph")
                    .kind
            })
            .collect()
    }

    pub fn lower_optimal(&self, g: &OrientedGraph, sr: usize) -> LowerOptimalVerdict {
        let lhs = (sr + 2 * self.alpha) as i64;
        let rhs = 2 * self.n as i64 - 2 * self.d as i64;
        let cond_disjoint = self.cycles.pairwise_disjoint;
        let cond_cycle_kinds = cond_disjoint
            && self
                .cycle_kinds(g)
                .iter()
                .all(|&k| k != CycleKind::OddlyOriented);
        let cond_alpha = match (self.alpha_t, self.alpha_gamma) {
            (Some(t), Some(gamma)) => t == gamma + self.d,
            _ => false,
        };
        let direct_equality = lhs == rhs;
        LowerOptimalVerdict {
            lhs,
            rhs,
            holds: lhs >= rhs,
            direct_equality,
            cond_disjoint,
            cond_cycle_kinds,
            cond_alpha,
            agree: direct_equality == (cond_disjoint && cond_cycle_kinds && cond_alpha),
        }
    }

    pub fn matching_bound(&self, g: &OrientedGraph, sr: usize) -> BoundReport {
        let lhs = sr as i64 - 2 * self.alpha_prime as i64;
        let rhs = ExactRadical::integer(-2 * self.d as i64);
        let structural = self.cycles.pairwise_disjoint
            && self
                .cycle_kinds(g)
                .iter()
                .all(|&k| k == CycleKind::EvenlyOriented)
            && self.matching_t == self.matching_gamma
            && self.matching_t.is_some();
        BoundReport::decide(
            TheoremId::Matching,
            Rational::from_integer(lhs),
            rhs,
            structural,
        )
    }

    /// Reports for the sum, difference and ratio bounds, in that order.
    pub fn mixed_bounds(&self, sr: usize) -> [BoundReport; 3] {
        let (n, m) = (self.n as i64, self.m as i64);
        let (sr, a) = (sr as i64, self.alpha as i64);
        let k = self.radicand();
        let sum = BoundReport::decide(
            TheoremId::SumBound,
            Rational::from_integer(sr + a),
            ExactRadical::new(8 * n - 4 * m - 5, -1, 2, k),
            self.star_or_triangle,
        );
        let difference = BoundReport::decide(
            TheoremId::DifferenceBound,
            Rational::from_integer(sr - a),
            ExactRadical::new(8 * n - 4 * m - 7, -3, 2, k),
            self.star_or_triangle,
        );
        let t = 2 * n - m - 1;
        let ratio_rhs = if k == 1 {
            ExactRadical::integer(2 * t - 2)
        } else {
            ExactRadical::new(-4 * t - 2 * (k - 1), 4 * t, k - 1, k)
        };
        let lhs = Rational::new(sr, a);
        // sr/α - (4t/(√K+1) - 2), scaled by α(√K+1) > 0:
        // (sr + 2α) + (sr + 2α)√K - 4αt
        let order = sign_of(sr + 2 * a - 4 * a * t, sr + 2 * a, k);
        debug_assert_eq!(order, ratio_rhs.cmp_rational(&lhs).reverse());
        let ratio = BoundReport::from_order(
            TheoremId::RatioBound,
            lhs,
            ratio_rhs,
            order,
            self.star_or_triangle,
        );
        [sum, difference, ratio]
    }

    pub fn alpha_bounds(&self) -> AlphaBounds {
        let (n, m) = (self.n as i64, self.m as i64);
        let s = 2 * m + n + 1;
        let lower = ExactRadical::new(s, -1, 2, s * s - 4 * n * n);
        let upper = ExactRadical::new(1, 1, 2, self.radicand());
        let a = Rational::from_integer(self.alpha as i64);
        let lower_holds = lower.cmp_rational(&a) != Ordering::Greater;
        let upper_order = upper.cmp_rational(&a);
        let upper_equality = upper_order == Ordering::Equal;
        let witness_match = build_join_extremal(self.n, self.alpha)
            .map(|w| are_isomorphic(&self.graph, &w))
            .unwrap_or(false);
        AlphaBounds {
            alpha: self.alpha,
            lower,
            upper,
            lower_holds,
            upper_holds: upper_order != Ordering::Less,
            upper_equality,
            witness_match,
            agree: upper_equality == witness_match,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerOptimalVerdict {
    /// `sr + 2α`.
    pub lhs: i64,
    /// `2n - 2d`.
    pub rhs: i64,
    pub holds: bool,
    pub direct_equality: bool,
    pub cond_disjoint: bool,
    pub cond_cycle_kinds: bool,
    pub cond_alpha: bool,
    pub agree: bool,
}

impl LowerOptimalVerdict {
    pub fn structural(&self) -> bool {
        self.cond_disjoint && self.cond_cycle_kinds && self.cond_alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem_id: TheoremId,
    pub lhs: Rational,
    pub rhs: ExactRadical,
    pub holds: bool,
    pub equality: bool,
    /// The input satisfies the theorem's characterisation of equality.
    pub extremal_match: bool,
    /// `equality == extremal_match`.
    pub agree: bool,
}

impl BoundReport {
    fn decide(
        theorem_id: TheoremId,
        lhs: Rational,
        rhs: ExactRadical,
        extremal_match: bool,
    ) -> Self {
        let order = rhs.cmp_rational(&lhs).reverse();
        Self::from_order(theorem_id, lhs, rhs, order, extremal_match)
    }

    fn from_order(
        theorem_id: TheoremId,
        lhs: Rational,
        rhs: ExactRadical,
        lhs_vs_rhs: Ordering,
        extremal_match: bool,
    ) -> Self {
        let equality = lhs_vs_rhs == Ordering::Equal;
        Self {
            theorem_id,
            lhs,
            rhs,
            holds: lhs_vs_rhs != Ordering::Less,
            equality,
            extremal_match,
            agree: equality == extremal_match,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaBounds {
    pub alpha: usize,
    pub lower: ExactRadical,
    pub upper: ExactRadical,
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub upper_equality: bool,
    /// `G ≅ K_{n-α} ∨ αK_1`.
    pub witness_match: bool,
    pub agree: bool,
}

pub fn classify_lower_optimal(g: &OrientedGraph) -> Result<LowerOptimalVerdict, TheoremError> {
    let facts = GraphFacts::new(g.underlying())?;
    Ok(facts.lower_optimal(g, skew_rank(g)))
}

pub fn check_matching_bound(g: &OrientedGraph) -> Result<BoundReport, TheoremError> {
    let facts = GraphFacts::new(g.underlying())?;
    Ok(facts.matching_bound(g, skew_rank(g)))
}

pub fn check_mixed_bounds(g: &OrientedGraph) -> Result<[BoundReport; 3], TheoremError> {
    let facts = GraphFacts::new(g.underlying())?;
    Ok(facts.mixed_bounds(skew_rank(g)))
}

pub fn alpha_bounds(g: &Graph) -> Result<AlphaBounds, TheoremError> {
    Ok(GraphFacts::new(g)?.alpha_bounds())
}

/// `K_{n-alpha} ∨ alpha·K_1`, clique on the low labels.
pub fn build_join_extremal(n: usize, alpha: usize) -> Result<Graph, TheoremError> {
    if alpha == 0 || alpha > n {
        return Err(TheoremError::AlphaOutOfRange { n, alpha });
    }
    let independent = Graph::empty(alpha);
    if alpha == n {
        return Ok(independent);
    }
    Ok(complete(n - alpha).join(&independent)?)
}

/// `sr + 2α = 2n - 2d`, for any (possibly disconnected) oriented graph.
pub fn is_lower_optimal(g: &OrientedGraph) -> bool {
    let u = g.underlying();
    skew_rank(g) + 2 * alpha(u) + 2 * cycle_space_dimension(u) == 2 * u.n()
}

/// Vertices lying on at least one cycle: members of non-bridge blocks.
pub fn vertices_on_cycles(g: &Graph) -> u64 {
    blocks(g)
        .iter()
        .filter(|b| !b.is_bridge())
        .fold(0, |acc, b| acc | b.vertices)
}

/// Tally of the conditional lemma assertions over one lower-optimal graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaTally {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl LemmaTally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

/// Checks the consequences that every lower-optimal oriented graph must
/// satisfy: cycle-vertex deletion, pendant-vertex deletion, pendant-cycle
/// removal, the closed form for α, and the bipartite orientation condition.
pub fn conditional_lemmas(facts: &GraphFacts, g: &OrientedGraph, sr: usize) -> LemmaTally {
    let mut tally = LemmaTally::default();
    let u = &facts.graph;
    let alpha_g = facts.alpha;
    let d = facts.d;

    // cycle-vertex deletion
    let blocks = blocks(u);
    for x in bits(vertices_on_cycles(u)) {
        let gx = g.remove_vertices(bit(x));
        let ux = gx.underlying();
        let sr_x = skew_rank(&gx);
        let alpha_x = alpha(ux);
        let d_x = cycle_space_dimension(ux);
        tally.check(sr_x == sr, || {
            format!("vertex-removal(i): sr(G-{x}) = {sr_x} != {sr}")
        });
        tally.check(alpha_x == alpha_g, || {
            format!("vertex-removal(ii): alpha(G-{x}) = {alpha_x} != {alpha_g}")
        });
        tally.check(d_x + 1 == d, || {
            format!("vertex-removal(iii): d(G-{x}) = {d_x}, d(G) = {d}")
        });
        tally.check(sr_x + 2 * alpha_x + 2 * d_x == 2 * ux.n(), || {
            format!("vertex-removal(iv): G-{x} is not lower-optimal")
        });
        let cyclic_blocks: Vec<_> = blocks
            .iter()
            .filter(|b| !b.is_bridge() && b.vertices & bit(x) != 0)
            .collect();
        let one_cycle = cyclic_blocks.len() == 1 && cyclic_blocks[0].is_cycle();
        tally.check(
            one_cycle && u.quasi_pendant_vertices() & bit(x) == 0,
            || format!("vertex-removal(v): vertex {x} on several cycles or quasi-pendant"),
        );
    }

    // pendant-vertex deletion
    let on_cycles = vertices_on_cycles(u);
    for y in bits(u.pendant_vertices()) {
        let x = u.neighbors(y).trailing_zeros() as usize;
        tally.check(on_cycles & bit(x) == 0, || {
            format!("pendant-pair(i): neighbour {x} of pendant {y} lies on a cycle")
        });
        let h = g.remove_vertices(bit(x) | bit(y));
        tally.check(is_lower_optimal(&h), || {
            format!("pendant-pair(ii): G-{x}-{y} is not lower-optimal")
        });
    }

    // pendant-cycle removal
    for pc in pendant_cycles(u) {
        let q = pc.cycle.len();
        let x = pc.attachment;
        let kind = classify_cycle(g, &pc.cycle).expect("pendant cycle").kind;
        let cycle_mask = pc.cycle.iter().fold(0u64, |acc, &v| acc | bit(v));
        let h = g.remove_vertices(cycle_mask);
        let mm = g.remove_vertices(cycle_mask & !bit(x));
        let (sr_h, sr_m) = (skew_rank(&h), skew_rank(&mm));
        let (alpha_h, alpha_m) = (alpha(h.underlying()), alpha(mm.underlying()));
        tally.check(kind != CycleKind::OddlyOriented, || {
            format!("pendant-cycle(i): pendant C_{q} at {x} is oddly-oriented")
        });
        let (sr_delta, alpha_delta) = match kind {
            CycleKind::Odd => (q - 1, (q - 1) / 2),
            _ => (q - 2, q / 2),
        };
        if kind != CycleKind::OddlyOriented {
            tally.check(sr == sr_delta + sr_h && alpha_g == alpha_h + alpha_delta, || {
                format!("pendant-cycle(ii): pendant C_{q} at {x}: sr {sr} vs {sr_delta}+{sr_h}, alpha {alpha_g} vs {alpha_h}+{alpha_delta}")
            });
        }
        tally.check(is_lower_optimal(&h) && is_lower_optimal(&mm), || {
            format!("pendant-cycle(iii): H or M of pendant C_{q} at {x} not lower-optimal")
        });
        tally.check(sr_m == sr_h && alpha_m == alpha_h + 1, || {
            format!("pendant-cycle(iv): sr(M) = {sr_m}, sr(H) = {sr_h}, alpha(M) = {alpha_m}, alpha(H) = {alpha_h}")
        });
    }

    // global structure
    tally.check(facts.cycles.pairwise_disjoint, || {
        "cycle-shape(i): cycles not pairwise vertex-disjoint".into()
    });
    if facts.cycles.pairwise_disjoint {
        let kinds = facts.cycle_kinds(g);
        tally.check(kinds.iter().all(|&k| k != CycleKind::OddlyOriented), || {
            "cycle-shape(ii): an even cycle is oddly-oriented".into()
        });
        let half_sum: usize = facts.cycles.cycles.iter().map(|c| c.len() / 2).sum();
        let alpha_t = facts.alpha_t.expect("disjoint cycles give T_G");
        tally.check(alpha_g + d == alpha_t + half_sum, || {
            format!("cycle-shape(iii): alpha = {alpha_g}, alpha(T) = {alpha_t}, half-cycle sum = {half_sum}, d = {d}")
        });
        if facts.bipartite {
            tally.check(
                kinds.iter().all(|&k| k == CycleKind::EvenlyOriented),
                || "bipartite-orientation: bipartite lower-optimal graph with an oddly-oriented cycle".into(),
            );
        }
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path;

    fn c4(arcs: &[(usize, usize)]) -> OrientedGraph {
        OrientedGraph::from_arcs(4, arcs).unwrap()
    }

    #[test]
    fn lower_optimal_examples() {
        for mask in 0..32 {
            let g = OrientedGraph::from_mask(cycle(5), mask);
            let v = classify_lower_optimal(&g).unwrap();
            assert!(v.direct_equality && v.agree, "{v:?}");
        }
        let oddly = c4(&[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let v = classify_lower_optimal(&oddly).unwrap();
        assert_eq!((v.lhs, v.rhs), (8, 6));
        assert!(!v.direct_equality && !v.cond_cycle_kinds && v.agree);
        let tree = OrientedGraph::from_mask(path(6), 0b10110);
        let v = classify_lower_optimal(&tree).unwrap();
        assert!(v.direct_equality && v.structural());
        let disconnected = OrientedGraph::forward(Graph::empty(2));
        assert_eq!(
            classify_lower_optimal(&disconnected),
            Err(TheoremError::Disconnected)
        );
    }

    #[test]
    fn matching_bound_examples() {
        let evenly = c4(&[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let r = check_matching_bound(&evenly).unwrap();
        assert_eq!(r.lhs, Rational::from_integer(-2));
        assert!(r.equality && r.extremal_match && r.agree);
        let tree = OrientedGraph::forward(path(5));
        let r = check_matching_bound(&tree).unwrap();
        assert_eq!(r.lhs, Rational::from_integer(0));
        assert!(r.equality && r.agree);
        let oddly = c4(&[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let r = check_matching_bound(&oddly).unwrap();
        assert_eq!(r.lhs, Rational::from_integer(0));
        assert!(r.holds && !r.equality && r.agree);
    }

    #[test]
    fn mixed_bound_examples() {
        let s5 = OrientedGraph::forward(star(5));
        let [sum, diff, ratio] = check_mixed_bounds(&s5).unwrap();
        assert_eq!(sum.rhs.k, 49);
        assert_eq!(sum.lhs, Rational::from_integer(6));
        assert_eq!(sum.rhs.simplified(), ExactRadical::integer(6));
        assert_eq!(diff.lhs, Rational::from_integer(-2));
        assert_eq!(diff.rhs.simplified(), ExactRadical::integer(-2));
        assert_eq!(ratio.lhs, Rational::new(1, 2));
        assert_eq!(
            ratio.rhs.simplified(),
            ExactRadical::rational(Rational::new(1, 2))
        );
        for r in [sum, diff, ratio] {
            assert!(
                r.holds && r.equality && r.extremal_match && r.agree,
                "{r:?}"
            );
        }

        let c3 = OrientedGraph::forward(cycle(3));
        let [sum, _, ratio] = check_mixed_bounds(&c3).unwrap();
        assert_eq!(sum.rhs.k, 1);
        assert_eq!(sum.lhs, Rational::from_integer(3));
        assert!(sum.equality && ratio.equality);
        assert_eq!(ratio.lhs, Rational::from_integer(2));

        let p4 = OrientedGraph::forward(path(4));
        let [sum, _, _] = check_mixed_bounds(&p4).unwrap();
        assert_eq!(sum.rhs.k, 25);
        assert_eq!(sum.rhs.simplified(), ExactRadical::integer(5));
        assert!(sum.holds && !sum.equality && !sum.extremal_match);
    }

    #[test]
    fn alpha_bound_examples() {
        let b = alpha_bounds(&star(5)).unwrap();
        assert!(b.upper_equality && b.witness_match && b.agree);
        assert_eq!(b.upper.simplified(), ExactRadical::integer(4));
        assert_eq!(b.lower, ExactRadical::new(14, -1, 2, 96));
        assert!(b.lower_holds);
        let b = alpha_bounds(&cycle(5)).unwrap();
        assert_eq!(b.upper, ExactRadical::new(1, 1, 2, 41));
        assert!(b.upper_holds && !b.upper_equality && !b.witness_match);
    }

    #[test]
    fn join_extremal_examples() {
        assert!(are_isomorphic(
            &build_join_extremal(5, 4).unwrap(),
            &star(5)
        ));
        assert!(are_isomorphic(
            &build_join_extremal(3, 1).unwrap(),
            &complete(3)
        ));
        let g = build_join_extremal(4, 2).unwrap();
        assert_eq!(g.m(), 5);
        assert!(are_isomorphic(&g, &complete(4).remove_edge(2, 3)));
        assert_eq!(alpha(&g), 2);
        assert!(build_join_extremal(3, 0).is_err());
        assert!(build_join_extremal(3, 4).is_err());
    }

    #[test]
    fn theorem_ids_parse() {
        for t in TheoremId::ALL {
            assert_eq!(t.label().parse::<TheoremId>().unwrap(), t);
        }
        assert!("3.7".parse::<TheoremId>().is_err());
    }
}
