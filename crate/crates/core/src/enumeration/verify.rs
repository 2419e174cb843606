use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::generate::{enumerate_graphs, switching_representatives, GRAPH_LIMIT};
use super::{guard, map_ordered, EnumerationError};
use crate::format::{encode_digraph6, encode_graph6};
use crate::graph::{Graph, OrientedGraph};
use crate::linalg::skew_rank;
use crate::structure::CycleKind;
use crate::theorems::{conditional_lemmas, GraphFacts, TheoremId};

/// Largest n swept over every orientation.
pub const EXHAUSTIVE_LIMIT: usize = 6;
/// Largest n reachable by orientation sampling.
pub const SAMPLED_LIMIT: usize = GRAPH_LIMIT;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub theorem: TheoremId,
    pub n_max: usize,
    pub seed: u64,
    /// 1 is sequential, 0 uses all cores.
    pub workers: usize,
    /// Orientations drawn per size above the exhaustive limit. `None`
    /// rejects such sizes for orientation-dependent claims.
    pub samples: Option<usize>,
    /// Check one orientation per switching class.
    pub switching_prune: bool,
}

impl VerifyConfig {
    pub fn new(theorem: TheoremId, n_max: usize) -> Self {
        Self {
            theorem,
            n_max,
            seed: 0,
            workers: 1,
            samples: None,
            switching_prune: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph6: String,
    pub digraph6: Option<String>,
    pub details: String,
    /// A consequence asserted on equality instances failed, rather than
    /// the inequality or its characterisation.
    pub conditional: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub n_range: [usize; 2],
    /// Sizes covered by sampling rather than a full sweep.
    pub sampled_sizes: Vec<usize>,
    pub seed: u64,
    pub graphs_checked: u64,
    pub orientations_checked: u64,
    pub equality_cases: u64,
    /// graph6 of each graph with an equality case, and how many of its
    /// checked orientations attain it.
    pub equality_census: BTreeMap<String, u64>,
    /// Conditional assertions evaluated on equality instances.
    pub lemma_checks: u64,
    pub counterexamples: Vec<Counterexample>,
    pub verdict: Verdict,
    pub wall_time_secs: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Default)]
struct Tally {
    graphs: u64,
    orientations: u64,
    equality_cases: u64,
    census: BTreeMap<String, u64>,
    lemma_checks: u64,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.graphs += other.graphs;
        self.orientations += other.orientations;
        self.equality_cases += other.equality_cases;
        for (k, v) in other.census {
            *self.census.entry(k).or_default() += v;
        }
        self.lemma_checks += other.lemma_checks;
        self.counterexamples.extend(other.counterexamples);
    }

    fn equality(&mut self, graph6: &str) {
        self.equality_cases += 1;
        *self.census.entry(graph6.to_owned()).or_default() += 1;
    }

    fn fail(&mut self, graph6: &str, og: Option<&OrientedGraph>, details: String) {
        self.push(graph6, og, details, false);
    }

    fn push(
        &mut self,
        graph6: &str,
        og: Option<&OrientedGraph>,
        details: String,
        conditional: bool,
    ) {
        self.counterexamples.push(Counterexample {
            graph6: graph6.to_owned(),
            digraph6: og.map(encode_digraph6),
            details,
            conditional,
        });
    }
}

enum Masks {
    All,
    Listed(Vec<u64>),
}

struct Unit {
    graph: Graph,
    masks: Masks,
}

fn check_orientation(
    theorem: TheoremId,
    facts: &GraphFacts,
    og: &OrientedGraph,
    graph6: &str,
    tally: &mut Tally,
) {
    let sr = skew_rank(og);
    match theorem {
        TheoremId::LowerOptimal | TheoremId::Bipartite => {
            let v = facts.lower_optimal(og, sr);
            let structural = if theorem == TheoremId::Bipartite {
                v.cond_disjoint
                    && facts
                        .cycle_kinds(og)
                        .iter()
                        .all(|&k| k == CycleKind::EvenlyOriented)
                    && v.cond_alpha
            } else {
                v.structural()
            };
            if !v.holds || v.direct_equality != structural {
                tally.fail(
                    graph6,
                    Some(og),
                    format!(
                        "sr + 2 alpha = {}, 2n - 2d = {}, verdict {v:?}",
                        v.lhs, v.rhs
                    ),
                );
            }
            if v.direct_equality {
                tally.equality(graph6);
                if theorem == TheoremId::LowerOptimal {
                    let lemmas = conditional_lemmas(facts, og, sr);
                    tally.lemma_checks += lemmas.checks as u64;
                    for msg in lemmas.violations {
                        tally.push(graph6, Some(og), msg, true);
                    }
                }
            }
        }
        TheoremId::Matching => {
            let r = facts.matching_bound(og, sr);
            if !r.holds || !r.agree {
                tally.fail(graph6, Some(og), format!("{r:?}"));
            }
            if r.equality {
                tally.equality(graph6);
            }
        }
        TheoremId::SumBound | TheoremId::DifferenceBound | TheoremId::RatioBound => {
            let idx = match theorem {
                TheoremId::SumBound => 0,
                TheoremId::DifferenceBound => 1,
                _ => 2,
            };
            let r = facts.mixed_bounds(sr)[idx];
            if !r.holds || !r.agree {
                tally.fail(
                    graph6,
                    Some(og),
                    format!("lhs {} rhs {} {r:?}", r.lhs, r.rhs),
                );
            }
            if r.equality {
                tally.equality(graph6);
            }
        }
        TheoremId::AlphaBounds => unreachable!("graph-level claim"),
    }
}

fn check_unit(theorem: TheoremId, switching_prune: bool, unit: &Unit) -> Tally {
    let mut tally = Tally {
        graphs: 1,
        ..Tally::default()
    };
    let g = &unit.graph;
    let graph6 = encode_graph6(g);
    let facts = GraphFacts::new(g).expect("connected graphs only");
    if theorem == TheoremId::AlphaBounds {
        let b = facts.alpha_bounds();
        if !b.lower_holds || !b.upper_holds || !b.agree {
            tally.fail(
                &graph6,
                None,
                format!(
                    "alpha = {}, lower {}, upper {}, {b:?}",
                    b.alpha, b.lower, b.upper
                ),
            );
        }
        if b.upper_equality {
            tally.equality(&graph6);
        }
        return tally;
    }
    let masks: Vec<u64> = match &unit.masks {
        Masks::Listed(v) => v.clone(),
        Masks::All if switching_prune => switching_representatives(g),
        Masks::All => (0..1u64 << g.m()).collect(),
    };
    for mask in masks {
        let og = OrientedGraph::from_mask(g.clone(), mask);
        check_orientation(theorem, &facts, &og, &graph6, &mut tally);
        tally.orientations += 1;
    }
    tally
}

/// Uniform draw of `samples` (graph, orientation) pairs, grouped by graph.
fn sample_units(graphs: Vec<Graph>, samples: usize, rng: &mut ChaCha8Rng) -> Vec<Unit> {
    let mut cumulative = Vec::with_capacity(graphs.len());
    let mut total = 0u64;
    for g in &graphs {
        total += 1u64 << g.m();
        cumulative.push(total);
    }
    let mut picked: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for _ in 0..samples {
        let r = rng.gen_range(0..total);
        let idx = cumulative.partition_point(|&c| c <= r);
        let base = if idx == 0 { 0 } else { cumulative[idx - 1] };
        picked.entry(idx).or_default().push(r - base);
    }
    let mut graphs: Vec<Option<Graph>> = graphs.into_iter().map(Some).collect();
    picked
        .into_iter()
        .map(|(idx, masks)| Unit {
            graph: graphs[idx].take().expect("each graph once"),
            masks: Masks::Listed(masks),
        })
        .collect()
}

/// Checks a claim over every connected graph with `1 <= n <= n_max`.
pub fn verify_theorem(config: &VerifyConfig) -> Result<VerificationReport, EnumerationError> {
    let start = Instant::now();
    let theorem = config.theorem;
    let oriented = theorem.is_oriented();
    let limit = if !oriented || config.samples.is_some() {
        SAMPLED_LIMIT
    } else {
        EXHAUSTIVE_LIMIT
    };
    guard("n_max", config.n_max, limit)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut units = Vec::new();
    let mut sampled_sizes = Vec::new();
    for n in 1..=config.n_max {
        let mut graphs = enumerate_graphs(n, true)?;
        if theorem == TheoremId::Bipartite {
            graphs.retain(Graph::is_bipartite);
        }
        if oriented && n > EXHAUSTIVE_LIMIT {
            sampled_sizes.push(n);
            let samples = config.samples.expect("guarded above");
            units.extend(sample_units(graphs, samples, &mut rng));
        } else {
            units.extend(graphs.into_iter().map(|graph| Unit {
                graph,
                masks: Masks::All,
            }));
        }
    }
    let tallies = map_ordered(&units, config.workers, |u| {
        check_unit(theorem, config.switching_prune, u)
    });
    let mut total = Tally::default();
    for t in tallies {
        total.merge(t);
    }
    let verdict = if total.counterexamples.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(VerificationReport {
        theorem_id: theorem,
        n_range: [1, config.n_max],
        sampled_sizes,
        seed: config.seed,
        graphs_checked: total.graphs,
        orientations_checked: total.orientations,
        equality_cases: total.equality_cases,
        equality_census: total.census,
        lemma_checks: total.lemma_checks,
        counterexamples: total.counterexamples,
        verdict,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, star};

    fn run(theorem: TheoremId, n_max: usize) -> VerificationReport {
        verify_theorem(&VerifyConfig::new(theorem, n_max)).unwrap()
    }

    #[test]
    fn lower_optimal_small() {
        let r = run(TheoremId::LowerOptimal, 4);
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert_eq!(r.graphs_checked, 1 + 1 + 2 + 6);
        assert!(r.lemma_checks > 0);
    }

    #[test]
    fn sum_bound_census() {
        let r = run(TheoremId::SumBound, 5);
        assert!(r.passed(), "{:?}", r.counterexamples);
        let mut expected: BTreeMap<String, u64> = (1..=5)
            .map(|n| {
                (
                    encode_graph6(&crate::iso::canonical_graph(&star(n))),
                    1u64 << (n - 1),
                )
            })
            .collect();
        expected.insert(encode_graph6(&crate::iso::canonical_graph(&cycle(3))), 8);
        assert_eq!(r.equality_census, expected);
    }

    #[test]
    fn guards() {
        assert!(verify_theorem(&VerifyConfig::new(TheoremId::LowerOptimal, 7)).is_err());
        assert!(verify_theorem(&VerifyConfig::new(TheoremId::LowerOptimal, 20)).is_err());
        let mut c = VerifyConfig::new(TheoremId::LowerOptimal, 9);
        c.samples = Some(10);
        assert!(verify_theorem(&c).is_err());
    }

    #[test]
    fn workers_and_pruning_agree() {
        let base = run(TheoremId::Matching, 5);
        let mut c = VerifyConfig::new(TheoremId::Matching, 5);
        c.workers = 3;
        let par = verify_theorem(&c).unwrap();
        assert_eq!(par.orientations_checked, base.orientations_checked);
        assert_eq!(par.equality_census, base.equality_census);
        c.switching_prune = true;
        let pruned = verify_theorem(&c).unwrap();
        assert!(pruned.passed());
        assert!(pruned.orientations_checked < base.orientations_checked);
    }

    #[test]
    fn sampling_is_seeded() {
        let mut c = VerifyConfig::new(TheoremId::RatioBound, 7);
        c.samples = Some(200);
        c.seed = 11;
        let a = verify_theorem(&c).unwrap();
        let b = verify_theorem(&c).unwrap();
        assert!(a.passed());
        assert_eq!(a.sampled_sizes, vec![7]);
        assert_eq!(a.equality_census, b.equality_census);
        assert_eq!(a.orientations_checked, b.orientations_checked);
    }
}
