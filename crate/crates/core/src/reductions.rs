//! Skew-rank by rewriting: pendant-vertex deletion, pendant-cycle removal
//! and direct scoring of cycle components, with an exact-rank fallback on
//! whatever core remains.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::format::encode_digraph6;
use crate::graph::{bit, bits, OrientedGraph};
use crate::linalg::skew_rank;
use crate::structure::{classify_cycle, is_cycle_of, pendant_cycles, CycleKind, PendantCycle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("vertex {vertex} has degree {degree}, not 1")]
    NotPendant { vertex: usize, degree: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("attachment vertex {vertex} has degree {degree}, not 3")]
    AttachmentDegree { vertex: usize, degree: usize },
    #[error("not a pendant cycle of the graph")]
    NotPendantCycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionRule {
    PendantVertex,
    PendantCycleOdd,
    PendantCycleEven,
    PendantCycleOddly,
    /// A connected component that is itself a cycle.
    CycleComponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum StepDetail {
    /// `y` is the pendant vertex, `x` its neighbour.
    PendantVertex {
        x: usize,
        y: usize,
    },
    PendantCycle {
        cycle: Vec<usize>,
        attachment: usize,
        retained: bool,
    },
    Cycle {
        cycle: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub rule: ReductionRule,
    /// Ascending, in the labels of the graph the certificate was built for.
    pub removed_vertices: Vec<usize>,
    pub sr_delta: usize,
    pub detail: StepDetail,
}

fn as_digraph6<S: Serializer>(g: &OrientedGraph, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&encode_digraph6(g))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionCertificate {
    pub steps: Vec<ReductionStep>,
    #[serde(serialize_with = "as_digraph6")]
    pub core: OrientedGraph,
    /// Original labels of the core vertices.
    pub core_vertices: Vec<usize>,
    pub core_rank: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayCheck {
    /// Steps whose delta matched the exact ranks before and after.
    pub steps_verified: usize,
    pub failed_step: Option<usize>,
    pub prefix_parity_even: bool,
    pub exact_rank: usize,
    pub total_matches: bool,
}

impl ReplayCheck {
    pub fn ok(&self) -> bool {
        self.failed_step.is_none() && self.prefix_parity_even && self.total_matches
    }
}

/// Working graph with the original label of every current vertex.
#[derive(Clone)]
struct Labelled {
    g: OrientedGraph,
    labels: Vec<usize>,
}

impl Labelled {
    fn remove(&self, drop: u64) -> (Labelled, Vec<usize>) {
        let (g, kept) = self.g.induced(self.g.underlying().vertex_mask() & !drop);
        let labels = kept.iter().map(|&v| self.labels[v]).collect();
        let mut removed: Vec<usize> = bits(drop).map(|v| self.labels[v]).collect();
        removed.sort_unstable();
        (Labelled { g, labels }, removed)
    }

    fn relabel(&self, vs: &[usize]) -> Vec<usize> {
        vs.iter().map(|&v| self.labels[v]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Move {
    Pendant(usize),
    Cycle(PendantCycle),
    Component(Vec<usize>),
}

fn pendant_move(w: &Labelled, y: usize) -> (Labelled, ReductionStep) {
    let x = w.g.underlying().neighbors(y).trailing_zeros() as usize;
    let (next, removed) = w.remove(bit(x) | bit(y));
    let step = ReductionStep {
        rule: ReductionRule::PendantVertex,
        removed_vertices: removed,
        sr_delta: 2,
        detail: StepDetail::PendantVertex {
            x: w.labels[x],
            y: w.labels[y],
        },
    };
    (next, step)
}

fn cycle_rule(w: &Labelled, cycle: &[usize]) -> (ReductionRule, usize) {
    let q = cycle.len();
    match classify_cycle(&w.g, cycle)
        .expect("cycle of the working graph")
        .kind
    {
        CycleKind::Odd => (ReductionRule::PendantCycleOdd, q - 1),
        CycleKind::EvenlyOriented => (ReductionRule::PendantCycleEven, q - 2),
        CycleKind::OddlyOriented => (ReductionRule::PendantCycleOddly, q),
    }
}

fn pendant_cycle_move(w: &Labelled, pc: &PendantCycle) -> (Labelled, ReductionStep) {
    let (rule, sr_delta) = cycle_rule(w, &pc.cycle);
    let retained = rule != ReductionRule::PendantCycleOddly;
    let mut drop = pc.cycle.iter().fold(0u64, |acc, &v| acc | bit(v));
    if retained {
        drop &= !bit(pc.attachment);
    }
    let (next, removed) = w.remove(drop);
    let step = ReductionStep {
        rule,
        removed_vertices: removed,
        sr_delta,
        detail: StepDetail::PendantCycle {
            cycle: w.relabel(&pc.cycle),
            attachment: w.labels[pc.attachment],
            retained,
        },
    };
    (next, step)
}

fn component_move(w: &Labelled, cycle: &[usize]) -> (Labelled, ReductionStep) {
    let q = cycle.len();
    let (rule, sr_delta) = match cycle_rule(w, cycle) {
        (ReductionRule::PendantCycleOdd, _) => (ReductionRule::CycleComponent, q - 1),
        (ReductionRule::PendantCycleEven, _) => (ReductionRule::CycleComponent, q - 2),
        _ => (ReductionRule::CycleComponent, q),
    };
    let drop = cycle.iter().fold(0u64, |acc, &v| acc | bit(v));
    let (next, removed) = w.remove(drop);
    let step = ReductionStep {
        rule,
        removed_vertices: removed,
        sr_delta,
        detail: StepDetail::Cycle {
            cycle: w.relabel(cycle),
        },
    };
    (next, step)
}

/// Vertices of a component that is a simple cycle, in cycle order from
/// its smallest vertex.
fn cycle_component(w: &Labelled, component: u64) -> Option<Vec<usize>> {
    let g = w.g.underlying();
    let size = component.count_ones() as usize;
    if size < 3 || bits(component).any(|v| g.degree(v) != 2) {
        return None;
    }
    let start = component.trailing_zeros() as usize;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = g.neighbors(start).trailing_zeros() as usize;
    while cur != start {
        order.push(cur);
        let next = (g.neighbors(cur) & !bit(prev)).trailing_zeros() as usize;
        prev = cur;
        cur = next;
    }
    Some(order)
}

fn drop_isolated(w: Labelled) -> Labelled {
    let g = w.g.underlying();
    let isolated = bits(g.vertex_mask())
        .filter(|&v| g.degree(v) == 0)
        .fold(0u64, |acc, v| acc | bit(v));
    if isolated == 0 {
        w
    } else {
        w.remove(isolated).0
    }
}

fn eligible_moves(w: &Labelled) -> Vec<Move> {
    let g = w.g.underlying();
    let mut moves: Vec<Move> = bits(g.pendant_vertices()).map(Move::Pendant).collect();
    let mut cycles = pendant_cycles(g);
    cycles.sort_by_key(|pc| pc.cycle.iter().min().copied());
    moves.extend(cycles.into_iter().map(Move::Cycle));
    moves.extend(
        g.components()
            .into_iter()
            .filter_map(|c| cycle_component(w, c))
            .map(Move::Component),
    );
    moves
}

fn apply(w: &Labelled, mv: &Move) -> (Labelled, ReductionStep) {
    match mv {
        Move::Pendant(y) => pendant_move(w, *y),
        Move::Cycle(pc) => pendant_cycle_move(w, pc),
        Move::Component(c) => component_move(w, c),
    }
}

fn run(g: &OrientedGraph, mut choose: impl FnMut(&[Move]) -> usize) -> ReductionCertificate {
    let mut w = Labelled {
        g: g.clone(),
        labels: (0..g.n()).collect(),
    };
    let mut steps = Vec::new();
    loop {
        w = drop_isolated(w);
        let moves = eligible_moves(&w);
        if moves.is_empty() {
            break;
        }
        let (next, step) = apply(&w, &moves[choose(&moves)]);
        steps.push(step);
        w = next;
    }
    let core_rank = skew_rank(&w.g);
    let total = steps.iter().map(|s| s.sr_delta).sum::<usize>() + core_rank;
    ReductionCertificate {
        steps,
        core: w.g,
        core_vertices: w.labels,
        core_rank,
        total,
    }
}

/// Deletes pendant vertex `y` together with its neighbour.
pub fn reduce_pendant_vertex(
    g: &OrientedGraph,
    y: usize,
) -> Result<(OrientedGraph, ReductionStep), ReductionError> {
    let n = g.n();
    if y >= n {
        return Err(ReductionError::OutOfRange { vertex: y, n });
    }
    let degree = g.underlying().degree(y);
    if degree != 1 {
        return Err(ReductionError::NotPendant { vertex: y, degree });
    }
    let w = Labelled {
        g: g.clone(),
        labels: (0..n).collect(),
    };
    let (next, step) = pendant_move(&w, y);
    Ok((next.g, step))
}

/// Removes a pendant cycle attached at `x`. The attachment vertex stays
/// unless the cycle is oddly-oriented.
pub fn reduce_pendant_cycle(
    g: &OrientedGraph,
    cycle: &[usize],
    x: usize,
) -> Result<(OrientedGraph, ReductionStep), ReductionError> {
    let n = g.n();
    if let Some(&v) = cycle.iter().chain([&x]).find(|&&v| v >= n) {
        return Err(ReductionError::OutOfRange { vertex: v, n });
    }
    let u = g.underlying();
    if !is_cycle_of(u, cycle) || !cycle.contains(&x) {
        return Err(ReductionError::NotPendantCycle);
    }
    let degree = u.degree(x);
    if degree != 3 {
        return Err(ReductionError::AttachmentDegree { vertex: x, degree });
    }
    let mut wanted = cycle.to_vec();
    wanted.sort_unstable();
    let pc = pendant_cycles(u)
        .into_iter()
        .find(|pc| {
            let mut mine = pc.cycle.clone();
            mine.sort_unstable();
            pc.attachment == x && mine == wanted
        })
        .ok_or(ReductionError::NotPendantCycle)?;
    let w = Labelled {
        g: g.clone(),
        labels: (0..n).collect(),
    };
    let (next, step) = pendant_cycle_move(&w, &pc);
    Ok((next.g, step))
}

/// Greedy closure of the rewrite rules. Pendant vertices go first (lowest
/// index), then pendant cycles (lowest smallest vertex), then whole-cycle
/// components.
pub fn structural_skew_rank(g: &OrientedGraph) -> ReductionCertificate {
    run(g, |_| 0)
}

/// Same rules, applied in a seeded random order.
pub fn structural_skew_rank_shuffled(g: &OrientedGraph, seed: u64) -> ReductionCertificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run(g, |moves| {
        let idx: Vec<usize> = (0..moves.len()).collect();
        *idx.choose(&mut rng).expect("nonempty moves")
    })
}

/// Re-derives every step against exact ranks of the intermediate graphs.
pub fn replay(g: &OrientedGraph, cert: &ReductionCertificate) -> ReplayCheck {
    let mut removed = 0u64;
    let mut before = skew_rank(g);
    let exact_rank = before;
    let mut running = 0usize;
    let mut steps_verified = 0;
    let mut failed_step = None;
    let mut prefix_parity_even = true;
    for (i, step) in cert.steps.iter().enumerate() {
        for &v in &step.removed_vertices {
            removed |= bit(v);
        }
        let after = skew_rank(&g.remove_vertices(removed));
        running += step.sr_delta;
        prefix_parity_even &= running.is_multiple_of(2);
        if before == step.sr_delta + after {
            steps_verified += 1;
        } else if failed_step.is_none() {
            failed_step = Some(i);
        }
        before = after;
    }
    ReplayCheck {
        steps_verified,
        failed_step,
        prefix_parity_even: prefix_parity_even && cert.core_rank.is_multiple_of(2),
        exact_rank,
        total_matches: cert.total == exact_rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, star, Graph};

    #[test]
    fn pendant_vertex_examples() {
        let s5 = OrientedGraph::forward(star(5));
        let (rest, step) = reduce_pendant_vertex(&s5, 3).unwrap();
        assert_eq!((rest.n(), rest.underlying().m()), (3, 0));
        assert_eq!(step.sr_delta, 2);
        assert_eq!(step.removed_vertices, vec![0, 3]);
        assert_eq!(step.detail, StepDetail::PendantVertex { x: 0, y: 3 });

        let p4 = OrientedGraph::forward(path(4));
        let cert = structural_skew_rank(&p4);
        assert_eq!(cert.steps.len(), 2);
        assert_eq!(cert.total, 4);

        let err = reduce_pendant_vertex(&p4, 1).unwrap_err();
        assert_eq!(
            err,
            ReductionError::NotPendant {
                vertex: 1,
                degree: 2
            }
        );
    }

    fn cycle_with_tail(arcs: &[(usize, usize)], q: usize) -> OrientedGraph {
        // cycle 0..q, pendant q attached at 0
        let mut all = arcs.to_vec();
        all.push((0, q));
        OrientedGraph::from_arcs(q + 1, &all).unwrap()
    }

    #[test]
    fn pendant_cycle_examples() {
        let tri = cycle_with_tail(&[(0, 1), (1, 2), (2, 0)], 3);
        let (rest, step) = reduce_pendant_cycle(&tri, &[0, 1, 2], 0).unwrap();
        assert_eq!(step.rule, ReductionRule::PendantCycleOdd);
        assert_eq!(step.sr_delta, 2);
        assert_eq!(rest.underlying().m(), 1);
        assert_eq!(step.sr_delta + skew_rank(&rest), 4);
        assert_eq!(skew_rank(&tri), 4);

        let evenly = cycle_with_tail(&[(0, 1), (1, 2), (2, 3), (3, 0)], 4);
        let (rest, step) = reduce_pendant_cycle(&evenly, &[0, 1, 2, 3], 0).unwrap();
        assert_eq!(step.rule, ReductionRule::PendantCycleEven);
        assert_eq!((step.sr_delta, skew_rank(&rest)), (2, 2));
        assert_eq!(skew_rank(&evenly), 4);

        let oddly = cycle_with_tail(&[(0, 1), (1, 2), (2, 3), (0, 3)], 4);
        let (rest, step) = reduce_pendant_cycle(&oddly, &[0, 1, 2, 3], 0).unwrap();
        assert_eq!(step.rule, ReductionRule::PendantCycleOddly);
        assert_eq!(step.removed_vertices, vec![0, 1, 2, 3]);
        assert!(matches!(
            step.detail,
            StepDetail::PendantCycle {
                retained: false,
                ..
            }
        ));
        assert_eq!((step.sr_delta, rest.n(), skew_rank(&rest)), (4, 1, 0));
        assert_eq!(skew_rank(&oddly), 4);

        assert_eq!(
            reduce_pendant_cycle(&tri, &[0, 1, 2], 1),
            Err(ReductionError::AttachmentDegree {
                vertex: 1,
                degree: 2
            })
        );
        assert_eq!(
            reduce_pendant_cycle(&tri, &[0, 1, 3], 0),
            Err(ReductionError::NotPendantCycle)
        );
    }

    #[test]
    fn certificate_examples() {
        let dumbbell = OrientedGraph::forward(
            Graph::new(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap(),
        );
        let cert = structural_skew_rank(&dumbbell);
        assert_eq!(cert.steps[0].rule, ReductionRule::PendantCycleOdd);
        assert_eq!(cert.steps[1].rule, ReductionRule::PendantVertex);
        assert_eq!((cert.total, cert.core.n()), (6, 0));
        assert_eq!(skew_rank(&dumbbell), 6);
        assert!(replay(&dumbbell, &cert).ok());

        let k4 = OrientedGraph::forward(complete(4));
        let cert = structural_skew_rank(&k4);
        assert!(cert.steps.is_empty());
        assert_eq!(cert.core.n(), 4);
        assert_eq!(cert.total, cert.core_rank);
        assert_eq!(cert.total, skew_rank(&k4));

        let c5 = OrientedGraph::forward(cycle(5));
        let cert = structural_skew_rank(&c5);
        assert_eq!(cert.steps.len(), 1);
        assert_eq!(cert.steps[0].rule, ReductionRule::CycleComponent);
        assert_eq!(cert.total, 4);
    }

    #[test]
    fn tree_certificates_use_pendant_steps_only() {
        let g = Graph::new(7, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        for mask in [0, 0b101010, 0b111111] {
            let og = OrientedGraph::from_mask(g.clone(), mask);
            let cert = structural_skew_rank(&og);
            assert!(cert
                .steps
                .iter()
                .all(|s| s.rule == ReductionRule::PendantVertex));
            assert_eq!(cert.total, 2 * crate::invariants::matching_number(&g));
            assert!(replay(&og, &cert).ok());
        }
    }

    #[test]
    fn shuffled_order_keeps_total() {
        let g = Graph::new(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 3),
                (6, 7),
                (7, 8),
            ],
        )
        .unwrap();
        for mask in 0..(1u64 << g.m()) {
            let og = OrientedGraph::from_mask(g.clone(), mask);
            let exact = skew_rank(&og);
            for seed in 0..3 {
                let cert = structural_skew_rank_shuffled(&og, seed);
                assert_eq!(cert.total, exact);
                assert!(replay(&og, &cert).ok());
            }
        }
    }
}
