//! Slow, obviously-correct reference implementations.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use skewrank::graph::{Graph, IntegerMatrix, OrientedGraph};

/// α by scanning every vertex subset.
pub fn brute_alpha(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|&s| {
            g.edges()
                .iter()
                .all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0)
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// α' by trying every edge subset, pruned on conflicts.
pub fn brute_matching(g: &Graph) -> usize {
    fn go(edges: &[(usize, usize)], used: u64) -> usize {
        match edges.split_first() {
            None => 0,
            Some((&(u, v), rest)) => {
                let skip = go(rest, used);
                if used >> u & 1 == 0 && used >> v & 1 == 0 {
                    skip.max(1 + go(rest, used | 1 << u | 1 << v))
                } else {
                    skip
                }
            }
        }
    }
    go(g.edges(), 0)
}

/// Rank over Q by Gauss-Jordan on big rationals.
pub fn rational_rank(m: &IntegerMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .to_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = BigRational::one() / a[rank][c].clone();
        for x in a[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Sign of `C = 0 1 ... n-1 0` straight from the product of skew entries.
pub fn cycle_sign(g: &OrientedGraph, order: &[usize]) -> i8 {
    let k = order.len();
    (0..k)
        .map(|i| g.skew(order[i], order[(i + 1) % k]))
        .product()
}

/// skew-rank of an oriented cycle by the three-case formula.
pub fn cycle_rank_formula(g: &OrientedGraph) -> usize {
    let n = g.n();
    let order: Vec<usize> = (0..n).collect();
    if n % 2 == 1 {
        n - 1
    } else if cycle_sign(g, &order) > 0 {
        n - 2
    } else {
        n
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Minimum sorted edge list over all n! relabellings.
pub fn naive_canonical(g: &Graph, perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap()
}

/// Isomorphism classes of graphs on `n` vertices by brute force over all
/// edge sets.
pub fn naive_class_count(n: usize, connected_only: bool) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for set in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|&i| set >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let g = Graph::new(n, &edges).unwrap();
        if connected_only && !g.is_connected() {
            continue;
        }
        classes.insert(naive_canonical(&g, &perms));
    }
    classes.len()
}

/// The 17-vertex example: path a-b-c-d, a 5-cycle and a 4-cycle hanging
/// at b, a 4-cycle hanging at c. Even cycles are directed around.
pub fn three_cycle_witness() -> OrientedGraph {
    let mut arcs = vec![(0, 1), (1, 2), (2, 3)];
    arcs.extend([(4, 5), (5, 6), (6, 7), (7, 8), (8, 4), (1, 4)]);
    arcs.extend([(9, 10), (10, 11), (11, 12), (12, 9), (1, 9)]);
    arcs.extend([(13, 14), (14, 15), (15, 16), (16, 13), (2, 13)]);
    OrientedGraph::from_arcs(17, &arcs).unwrap()
}
