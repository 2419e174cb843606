mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewrank::enumeration::{
    enumerate_graphs, random_cactus, verify_theorem, VerificationReport, VerifyConfig,
};
use skewrank::format::{decode_digraph6, decode_graph6, encode_digraph6, encode_graph6};
use skewrank::graph::{skew_adjacency, Graph, IntegerMatrix, OrientedGraph};
use skewrank::invariants::{
    alpha, basic_profile, independence_number, matching_number, maximum_matching,
};
use skewrank::iso::{are_isomorphic, canonical_key};
use skewrank::linalg::{rank_exact, skew_rank};
use skewrank::reductions::{replay, structural_skew_rank, structural_skew_rank_shuffled};
use skewrank::structure::{classify_cycle, cycle_decomposition};
use skewrank::theorems::{alpha_bounds, check_matching_bound, GraphFacts, TheoremId};

use common::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |b| graph_from_bits(n, &b))
    })
}

fn oriented(max_n: usize) -> impl Strategy<Value = OrientedGraph> {
    (graphs(max_n), any::<u64>()).prop_map(|(g, mask)| {
        let m = g.m();
        let mask = if m >= 64 {
            mask
        } else {
            mask & ((1u64 << m) - 1)
        };
        OrientedGraph::from_mask(g, mask)
    })
}

fn connected_oriented(max_n: usize) -> impl Strategy<Value = OrientedGraph> {
    oriented(max_n).prop_filter("connected", |g| g.underlying().is_connected())
}

fn cactus(max_n: usize) -> impl Strategy<Value = OrientedGraph> {
    (1..=max_n, any::<u64>(), any::<u64>()).prop_map(|(n, seed, mask)| {
        let g = random_cactus(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let mask = mask & ((1u64 << g.m()) - 1);
        OrientedGraph::from_mask(g, mask)
    })
}

fn matrices() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c).prop_map(move |e| {
            IntegerMatrix::from_rows(e.chunks(c).map(|row| row.to_vec()).collect())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bareiss_rank_matches_rational_elimination(m in matrices()) {
        prop_assert_eq!(rank_exact(&m).rank, rational_rank(&m));
        prop_assert_eq!(rank_exact(&m.transpose()).rank, rank_exact(&m).rank);
    }

    #[test]
    fn skew_rank_is_even_and_exact(g in oriented(10)) {
        let s = skew_adjacency(&g);
        prop_assert_eq!(s.transpose(), s.map(|x| -x));
        let sr = skew_rank(&g);
        prop_assert_eq!(sr % 2, 0);
        prop_assert_eq!(sr, rational_rank(&s));
    }

    #[test]
    fn independence_matches_brute_force(g in graphs(12)) {
        let s = independence_number(&g).unwrap();
        prop_assert_eq!(s.size, brute_alpha(&g));
        prop_assert_eq!(s.witness.len(), s.size);
        for (i, &u) in s.witness.iter().enumerate() {
            for &v in &s.witness[i + 1..] {
                prop_assert!(u < v && !g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn matching_matches_brute_force(g in graphs(11)) {
        prop_assert_eq!(matching_number(&g), brute_matching(&g));
        let mate = maximum_matching(&g);
        for (v, m) in mate.iter().enumerate() {
            if let Some(w) = *m {
                prop_assert!(g.has_edge(v, w));
                prop_assert_eq!(mate[w], Some(v));
            }
        }
    }

    #[test]
    fn canonical_key_ignores_labels(g in graphs(9), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical_key(&g), canonical_key(&h));
        prop_assert!(are_isomorphic(&g, &h));
    }

    #[test]
    fn switching_keeps_rank_and_cycle_signs(g in oriented(9), v in 0usize..9) {
        let v = v % g.n();
        let h = g.switch_at(v);
        prop_assert_eq!(skew_rank(&h), skew_rank(&g));
        for c in cycle_decomposition(g.underlying()).cycles {
            prop_assert_eq!(classify_cycle(&g, &c).unwrap(), classify_cycle(&h, &c).unwrap());
        }
    }

    #[test]
    fn certificates_reproduce_rank(g in prop_oneof![oriented(9), cactus(12)], seed in any::<u64>()) {
        let exact = skew_rank(&g);
        let cert = structural_skew_rank(&g);
        prop_assert_eq!(cert.total, exact);
        prop_assert!(replay(&g, &cert).ok());
        let shuffled = structural_skew_rank_shuffled(&g, seed);
        prop_assert_eq!(shuffled.total, exact);
        prop_assert!(replay(&g, &shuffled).ok());
    }

    #[test]
    fn formats_round_trip(g in oriented(20)) {
        let d6 = encode_digraph6(&g);
        prop_assert_eq!(&decode_digraph6(&d6).unwrap(), &g);
        let g6 = encode_graph6(g.underlying());
        prop_assert_eq!(&decode_graph6(&g6).unwrap(), g.underlying());
    }

    #[test]
    fn profile_is_consistent(g in graphs(10)) {
        let p = basic_profile(&g).unwrap();
        prop_assert_eq!(p.d + p.n, p.m + p.omega);
        if p.bipartite {
            prop_assert_eq!(p.alpha + p.alpha_prime, p.n);
        }
        let cs = cycle_decomposition(&g);
        if cs.pairwise_disjoint {
            prop_assert_eq!(cs.cycles.len(), p.d);
        }
    }

    #[test]
    fn pendant_identity(g in graphs(10)) {
        for y in (0..g.n()).filter(|&y| g.degree(y) == 1) {
            let x = g.neighbors(y).trailing_zeros() as usize;
            let a = alpha(&g);
            prop_assert_eq!(alpha(&g.remove_vertices(1u64 << x)), a);
            prop_assert_eq!(alpha(&g.remove_vertices(1u64 << x | 1u64 << y)) + 1, a);
        }
    }

    #[test]
    fn bounds_hold_on_random_connected_graphs(g in connected_oriented(9)) {
        let facts = GraphFacts::new(g.underlying()).unwrap();
        let sr = skew_rank(&g);
        let v = facts.lower_optimal(&g, sr);
        prop_assert!(v.holds && v.agree, "{:?}", v);
        let r = check_matching_bound(&g).unwrap();
        prop_assert!(r.holds && r.agree);
        for r in facts.mixed_bounds(sr) {
            prop_assert!(r.holds && r.agree, "{:?}", r);
        }
        let b = alpha_bounds(g.underlying()).unwrap();
        prop_assert!(b.lower_holds && b.upper_holds && b.agree);
    }
}

#[test]
fn enumeration_matches_naive_dedup() {
    for n in 1..=5 {
        for connected in [false, true] {
            assert_eq!(
                enumerate_graphs(n, connected).unwrap().len(),
                naive_class_count(n, connected),
                "n = {n}, connected = {connected}"
            );
        }
    }
}

#[test]
fn larger_enumeration_counts() {
    assert_eq!(enumerate_graphs(7, true).unwrap().len(), 853);
    assert_eq!(enumerate_graphs(7, false).unwrap().len(), 1044);
    assert_eq!(enumerate_graphs(6, false).unwrap().len(), 156);
}

#[test]
fn partitioned_runs_match_single_worker() {
    let strip = |r: VerificationReport| {
        (
            r.graphs_checked,
            r.orientations_checked,
            r.equality_census,
            r.lemma_checks,
            r.counterexamples,
        )
    };
    for theorem in [TheoremId::LowerOptimal, TheoremId::RatioBound] {
        let mut config = VerifyConfig::new(theorem, 5);
        let one = verify_theorem(&config).unwrap();
        config.workers = 4;
        let four = verify_theorem(&config).unwrap();
        assert_eq!(strip(one), strip(four));
    }
}

#[test]
fn reports_serialize() {
    let r = verify_theorem(&VerifyConfig::new(TheoremId::SumBound, 4)).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: VerificationReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back.equality_census, r.equality_census);
    assert_eq!(back.theorem_id, TheoremId::SumBound);
    assert!(text.contains("\"theorem_id\":\"2.4\""));
}
