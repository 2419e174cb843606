//! Exact combinatorial invariants of the underlying graph.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, bits, Graph, MAX_VERTICES};

/// Vertex-count guard for the exact independence search.
pub const INDEPENDENCE_LIMIT: usize = MAX_VERTICES;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("independence search limited to {INDEPENDENCE_LIMIT} vertices, got {0}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub d: usize,
    pub alpha: usize,
    pub alpha_prime: usize,
    pub p: usize,
    pub bipartite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSet {
    pub size: usize,
    /// Lexicographically smallest maximum independent set, ascending.
    pub witness: Vec<usize>,
}

struct MaxIndependent<'a> {
    adj: &'a [u64],
}

impl MaxIndependent<'_> {
    /// Greedy clique cover of `cand`; the number of cliques bounds α from above.
    fn clique_cover(&self, mut cand: u64) -> usize {
        let mut cliques = 0;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= !bit(v);
            let mut common = self.adj[v] & cand;
            while common != 0 {
                let w = common.trailing_zeros() as usize;
                cand &= !bit(w);
                common &= self.adj[w] & !bit(w);
            }
            cliques += 1;
        }
        cliques
    }

    fn search(&self, mut cand: u64, mut size: usize, best: &mut usize) {
        // Vertices of degree <= 1 inside `cand` belong to some maximum set.
        loop {
            let forced = bits(cand).find(|&v| (self.adj[v] & cand).count_ones() <= 1);
            match forced {
                Some(v) => {
                    cand &= !(self.adj[v] | bit(v));
                    size += 1;
                }
                None => break,
            }
        }
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + self.clique_cover(cand) <= *best {
            return;
        }
        let v = bits(cand)
            .max_by_key(|&v| ((self.adj[v] & cand).count_ones(), std::cmp::Reverse(v)))
            .expect("cand nonempty");
        self.search(cand & !(self.adj[v] | bit(v)), size + 1, best);
        self.search(cand & !bit(v), size, best);
    }

    fn alpha(&self, cand: u64) -> usize {
        let mut best = 0;
        self.search(cand, 0, &mut best);
        best
    }
}

/// Exact independence number with the lexicographically smallest witness.
pub fn independence_number(g: &Graph) -> Result<IndependentSet, InvariantError> {
    if g.n() > INDEPENDENCE_LIMIT {
        return Err(InvariantError::TooLarge(g.n()));
    }
    let solver = MaxIndependent {
        adj: g.adjacency_rows(),
    };
    let mut cand = g.vertex_mask();
    let size = solver.alpha(cand);
    let mut witness = Vec::with_capacity(size);
    let mut need = size;
    for v in 0..g.n() {
        if need == 0 {
            break;
        }
        if cand & bit(v) == 0 {
            continue;
        }
        let rest = cand & !(g.neighbors(v) | bit(v));
        if solver.alpha(rest) + 1 == need {
            witness.push(v);
            need -= 1;
            cand = rest;
        } else {
            cand &= !bit(v);
        }
    }
    debug_assert_eq!(witness.len(), size);
    Ok(IndependentSet { size, witness })
}

/// α(G) for graphs within the size guard.
pub fn alpha(g: &Graph) -> usize {
    independence_number(g)
        .expect("graph within independence guard")
        .size
}

/// Maximum matching via Edmonds' blossom contraction. Returns `mate[v]`.
pub fn maximum_matching(g: &Graph) -> Vec<Option<usize>> {
    Blossom::new(g).run()
}

/// α'(G).
pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).iter().filter(|m| m.is_some()).count() / 2
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    in_queue: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Self {
            g,
            mate: vec![None; n],
            parent: vec![None; n],
            base: (0..n).collect(),
            in_queue: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                None => break,
                Some(m) => a = self.parent[m].expect("alternating tree"),
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b].expect("alternating tree")].expect("alternating tree");
        }
    }

    fn mark_path(&mut self, in_blossom: &mut [bool], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("matched on path");
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("alternating tree");
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.parent.iter_mut().for_each(|p| *p = None);
        self.in_queue.iter_mut().for_each(|q| *q = false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.queue.push_back(root);
        self.in_queue[root] = true;
        while let Some(v) = self.queue.pop_front() {
            for to in bits(self.g.neighbors(v)) {
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer =
                    to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lca(v, to);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(&mut in_blossom, v, cur, to);
                    self.mark_path(&mut in_blossom, to, cur, v);
                    for i in 0..n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_queue[i] {
                                self.in_queue[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.in_queue[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }

    fn run(mut self) -> Vec<Option<usize>> {
        // Greedy start.
        for &(u, v) in self.g.edges() {
            if self.mate[u].is_none() && self.mate[v].is_none() {
                self.mate[u] = Some(v);
                self.mate[v] = Some(u);
            }
        }
        for root in 0..self.g.n() {
            if self.mate[root].is_some() {
                continue;
            }
            if let Some(mut v) = self.find_path(root) {
                loop {
                    let pv = self.parent[v].expect("augmenting path");
                    let next = self.mate[pv];
                    self.mate[v] = Some(pv);
                    self.mate[pv] = Some(v);
                    match next {
                        None => break,
                        Some(nv) => v = nv,
                    }
                }
            }
        }
        self.mate
    }
}

/// d(G) = m - n + ω.
pub fn cycle_space_dimension(g: &Graph) -> usize {
    g.m() + g.component_count() - g.n()
}

pub fn basic_profile(g: &Graph) -> Result<InvariantProfile, InvariantError> {
    let alpha = independence_number(g)?.size;
    let omega = g.component_count();
    Ok(InvariantProfile {
        n: g.n(),
        m: g.m(),
        omega,
        d: g.m() + omega - g.n(),
        alpha,
        alpha_prime: matching_number(g),
        p: g.pendant_vertices().count_ones() as usize,
        bipartite: g.is_bipartite(),
    })
}
