//! Simple undirected graphs, their orientations, and the standard families.
//!
//! Vertices are dense labels `0..n`. Adjacency is kept as one `u64` bitmask
//! per vertex, which caps graphs at [`MAX_VERTICES`] vertices.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("{0} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("family size must be at least 1")]
    EmptyFamily,
    #[error("arc {0}->{1} is not an edge of the underlying graph")]
    NotAnEdge(usize, usize),
    #[error("orientation covers {got} edges, graph has {expected}")]
    OrientationSize { expected: usize, got: usize },
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::EndpointOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if adj[u] & bit(v) != 0 {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Builds a graph from symmetric, loop-free bitmask rows.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, &row) in adj.iter().enumerate() {
            debug_assert_eq!(row & bit(u), 0);
            for v in bits(row >> u >> 1) {
                edges.push((u, u + 1 + v));
            }
        }
        Self { n, adj, edges }
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        Self::from_adjacency(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn adjacency_rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Subgraph induced by `keep`, relabelled in ascending order of the kept
    /// vertices. Returns the graph and the old label of each new vertex.
    pub fn induced(&self, keep: u64) -> (Graph, Vec<usize>) {
        let keep = keep & self.vertex_mask();
        let old: Vec<usize> = bits(keep).collect();
        let mut new_of = [usize::MAX; MAX_VERTICES];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| bits(self.adj[v] & keep).fold(0u64, |acc, w| acc | bit(new_of[w])))
            .collect();
        (Graph::from_adjacency(adj), old)
    }

    pub fn remove_vertices(&self, drop: u64) -> Graph {
        self.induced(self.vertex_mask() & !drop).0
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> Graph {
        let mut adj = self.adj.clone();
        adj[u] &= !bit(v);
        adj[v] &= !bit(u);
        Graph::from_adjacency(adj)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[perm[u]] |= bit(perm[v]);
            adj[perm[v]] |= bit(perm[u]);
        }
        Graph::from_adjacency(adj)
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let comp = self.reach(s, self.vertex_mask());
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s` inside `within`.
    pub(crate) fn reach(&self, s: usize, within: u64) -> u64 {
        let mut comp = bit(s);
        let mut frontier = bit(s);
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.adj[v] & within;
            }
            frontier = next & !comp;
            comp |= next;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() == self.n - 1 && self.is_connected()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in bits(self.adj[v]) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Pendant (degree-one) vertices.
    pub fn pendant_vertices(&self) -> u64 {
        (0..self.n)
            .filter(|&v| self.degree(v) == 1)
            .fold(0, |acc, v| acc | bit(v))
    }

    /// Quasi-pendant vertices: neighbors of pendant vertices.
    pub fn quasi_pendant_vertices(&self) -> u64 {
        bits(self.pendant_vertices()).fold(0, |acc, v| acc | self.adj[v])
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row << self.n));
        Ok(Graph::from_adjacency(adj))
    }

    /// The join: disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let union = self.disjoint_union(other)?;
        let left = full_mask(self.n);
        let right = full_mask(union.n) & !left;
        let adj = (0..union.n)
            .map(|v| union.adj[v] | if v < self.n { right } else { left })
            .collect();
        Ok(Graph::from_adjacency(adj))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Named graph families with canonical labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `0 - 1 - ... - (n-1)`.
    Path(usize),
    /// The path closed by `(n-1) - 0`.
    Cycle(usize),
    /// `K_{1,n-1}` centred at vertex 0.
    Star(usize),
    Complete(usize),
    Empty(usize),
    Join(Box<Graph>, Box<Graph>),
}

pub fn make_family(kind: Family) -> Result<Graph, GraphError> {
    let check = |n: usize| {
        if n == 0 {
            Err(GraphError::EmptyFamily)
        } else if n > MAX_VERTICES {
            Err(GraphError::TooManyVertices(n))
        } else {
            Ok(())
        }
    };
    match kind {
        Family::Path(n) => {
            check(n)?;
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            Graph::new(n, &edges)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(GraphError::CycleTooShort(n));
            }
            check(n)?;
            let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            edges.push((n - 1, 0));
            Graph::new(n, &edges)
        }
        Family::Star(n) => {
            check(n)?;
            let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
            Graph::new(n, &edges)
        }
        Family::Complete(n) => {
            check(n)?;
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            Graph::new(n, &edges)
        }
        Family::Empty(n) => {
            if n > MAX_VERTICES {
                return Err(GraphError::TooManyVertices(n));
            }
            Ok(Graph::empty(n))
        }
        Family::Join(a, b) => a.join(&b),
    }
}

pub fn path(n: usize) -> Graph {
    make_family(Family::Path(n)).expect("valid path size")
}

pub fn cycle(n: usize) -> Graph {
    make_family(Family::Cycle(n)).expect("valid cycle size")
}

pub fn star(n: usize) -> Graph {
    make_family(Family::Star(n)).expect("valid star size")
}

pub fn complete(n: usize) -> Graph {
    make_family(Family::Complete(n)).expect("valid complete size")
}

/// A graph with one direction per edge.
///
/// `reversed[i]` refers to `underlying.edges()[i] = (u, v)`: `false` means
/// the arc `u -> v`, `true` means `v -> u`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    underlying: Graph,
    reversed: Vec<bool>,
}

impl OrientedGraph {
    /// Orients `g` with the arc `u -> v` for every edge `u < v`.
    pub fn forward(g: Graph) -> Self {
        let reversed = vec![false; g.m()];
        Self {
            underlying: g,
            reversed,
        }
    }

    pub fn with_reversed(g: Graph, reversed: Vec<bool>) -> Result<Self, GraphError> {
        if reversed.len() != g.m() {
            return Err(GraphError::OrientationSize {
                expected: g.m(),
                got: reversed.len(),
            });
        }
        Ok(Self {
            underlying: g,
            reversed,
        })
    }

    /// Orientation number `mask` of `g`: bit `i` reverses edge `i`. Edges
    /// past the 64th keep their default direction.
    pub fn from_mask(g: Graph, mask: u64) -> Self {
        let reversed = (0..g.m()).map(|i| i < 64 && mask >> i & 1 == 1).collect();
        Self {
            underlying: g,
            reversed,
        }
    }

    /// Builds an orientation from `(tail, head)` arcs covering every edge
    /// exactly once.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let g = Graph::new(n, arcs)?;
        let mut reversed = vec![false; g.m()];
        for &(t, h) in arcs {
            let i = g.edge_index(t, h).ok_or(GraphError::NotAnEdge(t, h))?;
            reversed[i] = t > h;
        }
        Ok(Self {
            underlying: g,
            reversed,
        })
    }

    pub fn underlying(&self) -> &Graph {
        &self.underlying
    }

    pub fn n(&self) -> usize {
        self.underlying.n
    }

    /// Arcs as `(tail, head)`, aligned with the underlying edge order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.underlying
            .edges
            .iter()
            .zip(&self.reversed)
            .map(|(&(u, v), &r)| if r { (v, u) } else { (u, v) })
    }

    pub fn reversed_flags(&self) -> &[bool] {
        &self.reversed
    }

    /// Reversal bitmask, the inverse of [`OrientedGraph::from_mask`] for
    /// graphs with at most 64 edges.
    pub fn mask(&self) -> u64 {
        self.reversed
            .iter()
            .take(64)
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | (r as u64) << i)
    }

    /// The skew function: `+1` for an arc `x -> y`, `-1` for `y -> x`, else 0.
    pub fn skew(&self, x: usize, y: usize) -> i8 {
        match self.underlying.edge_index(x, y) {
            None => 0,
            Some(i) => {
                let (u, _) = self.underlying.edges[i];
                let tail_is_x = (u == x) != self.reversed[i];
                if tail_is_x {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Induced sub-orientation on `keep`, relabelled ascending.
    pub fn induced(&self, keep: u64) -> (OrientedGraph, Vec<usize>) {
        let (g, old) = self.underlying.induced(keep);
        let reversed = g
            .edges
            .iter()
            .map(|&(u, v)| {
                let i = self
                    .underlying
                    .edge_index(old[u], old[v])
                    .expect("induced edge exists");
                self.reversed[i]
            })
            .collect();
        (
            OrientedGraph {
                underlying: g,
                reversed,
            },
            old,
        )
    }

    pub fn remove_vertices(&self, drop: u64) -> OrientedGraph {
        self.induced(self.underlying.vertex_mask() & !drop).0
    }

    /// Reverses every arc at `v`; the skew-rank is unchanged.
    pub fn switch_at(&self, v: usize) -> OrientedGraph {
        let reversed = self
            .underlying
            .edges
            .iter()
            .zip(&self.reversed)
            .map(|(&(a, b), &r)| if a == v || b == v { !r } else { r })
            .collect();
        OrientedGraph {
            underlying: self.underlying.clone(),
            reversed,
        }
    }
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<_> = self.arcs().collect();
        write!(f, "OrientedGraph(n={}, arcs={:?})", self.n(), arcs)
    }
}

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.cols.max(1))
            .map(<[i64]>::to_vec)
            .take(self.rows)
            .collect()
    }
}

/// The skew-adjacency matrix `S(G^σ)`.
pub fn skew_adjacency(g: &OrientedGraph) -> IntegerMatrix {
    let n = g.n();
    let mut s = IntegerMatrix::zeros(n, n);
    for (t, h) in g.arcs() {
        s.set(t, h, 1);
        s.set(h, t, -1);
    }
    s
}

/// The 0/1 adjacency matrix `A(G)`.
pub fn adjacency(g: &Graph) -> IntegerMatrix {
    let n = g.n();
    let mut a = IntegerMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        a.set(u, v, 1);
        a.set(v, u, 1);
    }
    a
}
