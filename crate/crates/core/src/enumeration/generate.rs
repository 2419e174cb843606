use std::collections::BTreeMap;

use rand::Rng;

use super::{guard, EnumerationError};
use crate::graph::{bit, bits, Graph, OrientedGraph};
use crate::iso::{canonical_form, CanonicalKey};

/// Largest vertex count for exhaustive graph generation.
pub const GRAPH_LIMIT: usize = 8;
/// Largest vertex count for tree generation.
pub const TREE_LIMIT: usize = 12;
/// Largest edge count for exhaustive orientation sweeps.
pub const ORIENTATION_EDGE_LIMIT: usize = 24;

fn insert_canonical(seen: &mut BTreeMap<CanonicalKey, Graph>, g: &Graph) {
    let (key, perm) = canonical_form(g);
    seen.entry(key).or_insert_with(|| g.permuted(&perm));
}

fn extend_by_vertex(level: &[Graph], nonempty: bool) -> Vec<Graph> {
    let mut seen = BTreeMap::new();
    for g in level {
        let n = g.n();
        let start = u64::from(nonempty);
        for subset in start..(1u64 << n) {
            let mut edges = g.edges().to_vec();
            edges.extend(bits(subset).map(|u| (u, n)));
            let h = Graph::new(n + 1, &edges).expect("valid extension");
            insert_canonical(&mut seen, &h);
        }
    }
    seen.into_values().collect()
}

/// One canonically labelled representative per isomorphism class, in
/// canonical-key order.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>, EnumerationError> {
    guard("n", n, GRAPH_LIMIT)?;
    if n == 0 {
        return Ok(vec![Graph::empty(0)]);
    }
    // Every connected graph has a vertex whose deletion leaves it connected.
    let mut level = vec![Graph::empty(1)];
    for _ in 1..n {
        level = extend_by_vertex(&level, connected_only);
    }
    Ok(level)
}

/// All trees on `n` vertices up to isomorphism.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>, EnumerationError> {
    guard("n", n, TREE_LIMIT)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(1)];
    for _ in 1..n {
        let mut seen = BTreeMap::new();
        for t in &level {
            let k = t.n();
            for v in 0..k {
                let mut edges = t.edges().to_vec();
                edges.push((v, k));
                insert_canonical(
                    &mut seen,
                    &Graph::new(k + 1, &edges).expect("leaf extension"),
                );
            }
        }
        level = seen.into_values().collect();
    }
    Ok(level)
}

/// All `2^m` orientations; mask bit `i` reverses the `i`-th sorted edge.
#[derive(Debug, Clone)]
pub struct Orientations {
    graph: Graph,
    next: u64,
    end: u64,
}

impl Iterator for Orientations {
    type Item = OrientedGraph;

    fn next(&mut self) -> Option<OrientedGraph> {
        if self.next == self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        Some(OrientedGraph::from_mask(self.graph.clone(), mask))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Orientations {}

pub fn enumerate_orientations(g: &Graph) -> Result<Orientations, EnumerationError> {
    guard("m", g.m(), ORIENTATION_EDGE_LIMIT)?;
    Ok(Orientations {
        graph: g.clone(),
        next: 0,
        end: 1u64 << g.m(),
    })
}

/// One orientation mask per switching class of a connected graph: the
/// edges of a BFS spanning tree are kept in their default direction.
pub fn switching_representatives(g: &Graph) -> Vec<u64> {
    let mut tree_edges = 0u64;
    let mut seen = 0u64;
    for component in g.components() {
        let root = component.trailing_zeros() as usize;
        seen |= bit(root);
        let mut frontier = vec![root];
        while let Some(v) = frontier.pop() {
            for w in bits(g.neighbors(v) & !seen) {
                seen |= bit(w);
                tree_edges |= bit(g.edge_index(v, w).expect("edge"));
                frontier.push(w);
            }
        }
    }
    let free: Vec<usize> = (0..g.m()).filter(|&i| tree_edges & bit(i) == 0).collect();
    (0..1u64 << free.len())
        .map(|choice| bits(choice).fold(0u64, |acc, j| acc | bit(free[j])))
        .collect()
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("random graph")
}

/// A connected cactus grown by attaching pendant vertices and cycles of
/// length 3 to 7 at random existing vertices.
pub fn random_cactus(n: usize, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    let mut count = usize::from(n > 0);
    while count < n {
        let v = rng.gen_range(0..count);
        let room = n - count;
        if room >= 2 && rng.gen_bool(0.5) {
            let q = rng.gen_range(3..=(room + 1).min(7));
            let mut prev = v;
            for w in count..count + q - 1 {
                edges.push((prev, w));
                prev = w;
            }
            edges.push((prev, v));
            count += q - 1;
        } else {
            edges.push((v, count));
            count += 1;
        }
    }
    Graph::new(n, &edges).expect("cactus")
}

pub fn random_orientation(g: &Graph, rng: &mut impl Rng) -> OrientedGraph {
    let mask = if g.m() == 0 {
        0
    } else {
        rng.gen_range(0..1u64 << g.m())
    };
    OrientedGraph::from_mask(g.clone(), mask)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::graph::{complete, path};
    use crate::linalg::skew_rank;

    #[test]
    fn graph_counts() {
        let connected: Vec<usize> = (1..=6)
            .map(|n| enumerate_graphs(n, true).unwrap().len())
            .collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
        let all: Vec<usize> = (0..=5)
            .map(|n| enumerate_graphs(n, false).unwrap().len())
            .collect();
        assert_eq!(all, vec![1, 1, 2, 4, 11, 34]);
        assert!(enumerate_graphs(9, false).is_err());
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=10)
            .map(|n| enumerate_trees(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert!(enumerate_trees(6).unwrap().iter().all(Graph::is_tree));
    }

    #[test]
    fn orientation_counts() {
        assert_eq!(enumerate_orientations(&complete(3)).unwrap().count(), 8);
        assert_eq!(enumerate_orientations(&path(2)).unwrap().count(), 2);
        assert_eq!(enumerate_orientations(&Graph::empty(3)).unwrap().count(), 1);
        let masks: HashSet<u64> = enumerate_orientations(&complete(4))
            .unwrap()
            .map(|o| o.mask())
            .collect();
        assert_eq!(masks.len(), 64);
        assert!(enumerate_orientations(&complete(8)).is_err());
    }

    #[test]
    fn switching_classes_cover_all_ranks() {
        let g = complete(4);
        let reps = switching_representatives(&g);
        assert_eq!(reps.len(), 8);
        let all: HashSet<usize> = (0..64)
            .map(|m| skew_rank(&OrientedGraph::from_mask(g.clone(), m)))
            .collect();
        let pruned: HashSet<usize> = reps
            .iter()
            .map(|&m| skew_rank(&OrientedGraph::from_mask(g.clone(), m)))
            .collect();
        assert_eq!(all, pruned);
    }

    #[test]
    fn cacti_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=12);
            let g = random_cactus(n, &mut rng);
            assert_eq!(g.n(), n);
            assert!(g.is_connected());
            assert!(g.m() + 1 >= n);
        }
    }
}
