//! Cycle structure of graphs whose cycles may be pairwise vertex-disjoint.
//!
//! A "cycle" here is a biconnected block that is itself a simple cycle. The
//! cycles of a graph are pairwise vertex-disjoint exactly when every block is
//! a bridge or a simple cycle and no vertex lies on two cycle blocks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, bits, Graph, OrientedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("cycles are not pairwise vertex-disjoint")]
    NotDisjoint,
    #[error("vertex sequence {0:?} is not a cycle of the graph")]
    NotACycle(Vec<usize>),
    #[error("input is not a tree with at least one edge")]
    NotATree,
}

/// A biconnected block: its vertices and edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: u64,
    pub edges: usize,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges == 1
    }

    pub fn is_cycle(&self) -> bool {
        self.edges >= 3 && self.edges == self.vertices.count_ones() as usize
    }
}

/// Biconnected blocks (Tarjan's edge-stack algorithm). Isolated vertices
/// belong to no block.
pub fn blocks(g: &Graph) -> Vec<Block> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Block>,
    }

    impl State<'_> {
        fn visit(&mut self, v: usize, parent: Option<usize>) {
            self.time += 1;
            self.disc[v] = self.time;
            self.low[v] = self.time;
            for w in bits(self.g.neighbors(v)) {
                if Some(w) == parent {
                    continue;
                }
                if self.disc[w] == 0 {
                    self.stack.push((v, w));
                    self.visit(w, Some(v));
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.disc[v] {
                        let mut vertices = 0u64;
                        let mut edges = 0;
                        while let Some((a, b)) = self.stack.pop() {
                            vertices |= bit(a) | bit(b);
                            edges += 1;
                            if (a, b) == (v, w) {
                                break;
                            }
                        }
                        self.out.push(Block { vertices, edges });
                    }
                } else if self.disc[w] < self.disc[v] {
                    self.stack.push((v, w));
                    self.low[v] = self.low[v].min(self.disc[w]);
                }
            }
        }
    }

    let n = g.n();
    let mut st = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if st.disc[v] == 0 {
            st.visit(v, None);
        }
    }
    st.out
}

/// Traversal of a cycle block starting at its smallest vertex, stepping to
/// the smaller of its two neighbors.
fn cycle_order(g: &Graph, vertices: u64) -> Vec<usize> {
    let start = vertices.trailing_zeros() as usize;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = (g.neighbors(start) & vertices).trailing_zeros() as usize;
    while cur != start {
        order.push(cur);
        let next = bits(g.neighbors(cur) & vertices)
            .find(|&w| w != prev)
            .expect("cycle block vertex has two block neighbors");
        prev = cur;
        cur = next;
    }
    order
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleStructure {
    /// Cycle blocks as traversals. When `pairwise_disjoint` is false these
    /// are only the blocks that happen to be simple cycles.
    pub cycles: Vec<Vec<usize>>,
    pub pairwise_disjoint: bool,
    /// `cycle_vertex_map[v]` is the index of the cycle through `v`.
    pub cycle_vertex_map: Option<Vec<Option<usize>>>,
    #[serde(skip)]
    pub t_graph: Option<Graph>,
    /// Labels in `t_graph` of the contracted vertices, one per cycle.
    pub w_vertices: Option<Vec<usize>>,
    #[serde(skip)]
    pub gamma_graph: Option<Graph>,
}

impl CycleStructure {
    pub fn cycle_vertices(&self) -> u64 {
        self.cycles.iter().flatten().fold(0, |acc, &v| acc | bit(v))
    }

    pub fn cycle_index_of(&self, v: usize) -> Option<usize> {
        self.cycle_vertex_map.as_ref().and_then(|map| map[v])
    }
}

pub fn cycle_decomposition(g: &Graph) -> CycleStructure {
    let blocks = blocks(g);
    let mut on_cycle = 0u64;
    let mut disjoint = true;
    let mut cycle_sets = Vec::new();
    for b in &blocks {
        if b.is_cycle() {
            if on_cycle & b.vertices != 0 {
                disjoint = false;
            }
            on_cycle |= b.vertices;
            cycle_sets.push(b.vertices);
        } else if !b.is_bridge() {
            disjoint = false;
        }
    }
    cycle_sets.sort_by_key(|s| s.trailing_zeros());
    let cycles: Vec<Vec<usize>> = cycle_sets.iter().map(|&s| cycle_order(g, s)).collect();
    if !disjoint {
        return CycleStructure {
            cycles,
            pairwise_disjoint: false,
            cycle_vertex_map: None,
            t_graph: None,
            w_vertices: None,
            gamma_graph: None,
        };
    }
    let mut map = vec![None; g.n()];
    for (i, c) in cycles.iter().enumerate() {
        for &v in c {
            map[v] = Some(i);
        }
    }
    let (t, w) = contract_with(g, &cycle_sets);
    let gamma = g.remove_vertices(on_cycle);
    CycleStructure {
        cycles,
        pairwise_disjoint: true,
        cycle_vertex_map: Some(map),
        t_graph: Some(t),
        w_vertices: Some(w),
        gamma_graph: Some(gamma),
    }
}

/// Contracts each vertex set in `cycles` (sorted by smallest vertex) to one
/// new vertex appended after the surviving vertices.
fn contract_with(g: &Graph, cycles: &[u64]) -> (Graph, Vec<usize>) {
    let on_cycle = cycles.iter().fold(0u64, |a, &s| a | s);
    let survivors: Vec<usize> = bits(g.vertex_mask() & !on_cycle).collect();
    let k = survivors.len();
    let mut label = vec![0usize; g.n()];
    for (i, &v) in survivors.iter().enumerate() {
        label[v] = i;
    }
    for (i, &set) in cycles.iter().enumerate() {
        for v in bits(set) {
            label[v] = k + i;
        }
    }
    let total = k + cycles.len();
    let mut adj = vec![0u64; total];
    for &(u, v) in g.edges() {
        let (a, b) = (label[u], label[v]);
        if a != b {
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
    }
    (Graph::from_adjacency(adj), (k..total).collect())
}

/// `T_G` and `W`: each cycle contracted to a single vertex.
pub fn contract_cycles(g: &Graph) -> Result<(Graph, Vec<usize>), StructureError> {
    let cs = cycle_decomposition(g);
    match (cs.t_graph, cs.w_vertices) {
        (Some(t), Some(w)) => Ok((t, w)),
        _ => Err(StructureError::NotDisjoint),
    }
}

/// `Γ_G`: every cycle vertex deleted.
pub fn remove_cycle_vertices(g: &Graph) -> Result<Graph, StructureError> {
    cycle_decomposition(g)
        .gamma_graph
        .ok_or(StructureError::NotDisjoint)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleKind {
    Odd,
    EvenlyOriented,
    OddlyOriented,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleClass {
    pub kind: CycleKind,
    /// Product of skew entries along the given traversal. Only meaningful
    /// for even cycles; reversing an odd cycle flips it.
    pub sign: i8,
}

/// Checks that `cycle` is a simple cycle of `g` in traversal order.
pub fn is_cycle_of(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 {
        return false;
    }
    let mut seen = 0u64;
    for &v in cycle {
        if v >= g.n() || seen & bit(v) != 0 {
            return false;
        }
        seen |= bit(v);
    }
    (0..k).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % k]))
}

pub fn classify_cycle(g: &OrientedGraph, cycle: &[usize]) -> Result<CycleClass, StructureError> {
    if !is_cycle_of(g.underlying(), cycle) {
        return Err(StructureError::NotACycle(cycle.to_vec()));
    }
    let k = cycle.len();
    let sign = (0..k)
        .map(|i| g.skew(cycle[i], cycle[(i + 1) % k]))
        .product::<i8>();
    let kind = match (k % 2 == 1, sign > 0) {
        (true, _) => CycleKind::Odd,
        (false, true) => CycleKind::EvenlyOriented,
        (false, false) => CycleKind::OddlyOriented,
    };
    Ok(CycleClass { kind, sign })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantCycle {
    pub cycle: Vec<usize>,
    pub attachment: usize,
}

/// Cycles with exactly one vertex of degree above two, that vertex having
/// degree exactly three. Ordered by smallest cycle vertex.
pub fn pendant_cycles(g: &Graph) -> Vec<PendantCycle> {
    let mut out: Vec<PendantCycle> = blocks(g)
        .into_iter()
        .filter(Block::is_cycle)
        .filter_map(|b| {
            let mut heavy = bits(b.vertices).filter(|&v| g.degree(v) > 2);
            let x = heavy.next()?;
            if heavy.next().is_some() || g.degree(x) != 3 {
                return None;
            }
            Some(PendantCycle {
                cycle: cycle_order(g, b.vertices),
                attachment: x,
            })
        })
        .collect();
    out.sort_by_key(|p| p.cycle[0]);
    out
}

/// `T̃`: a tree with its pendant vertices removed.
pub fn strip_pendants(t: &Graph) -> Result<Graph, StructureError> {
    if !t.is_tree() || t.m() == 0 {
        return Err(StructureError::NotATree);
    }
    Ok(t.remove_vertices(t.pendant_vertices()))
}
