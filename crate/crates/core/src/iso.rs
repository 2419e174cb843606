//! Small-graph isomorphism and canonical labelling.

use std::collections::BTreeMap;

use crate::graph::{bit, bits, Graph};

/// Largest vertex count accepted by [`canonical_form`].
pub const CANONICAL_LIMIT: usize = 16;

/// Isomorphism-invariant vertex colouring by iterated neighbourhood
/// refinement. Colours are dense ranks `0..k` ordered by signature.
pub fn refine_colours(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colour: Vec<usize> = vec![0; n];
    let mut classes = if n == 0 { 0 } else { 1 };
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = bits(g.neighbors(v)).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut ranks: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in &signatures {
            ranks.entry(s).or_insert(0);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i;
        }
        let next: Vec<usize> = signatures.iter().map(|s| ranks[s]).collect();
        let count = ranks.len();
        drop(ranks);
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub n: usize,
    /// Upper-triangle adjacency bits in graph6 order, first bit most
    /// significant.
    pub bits: u128,
}

struct Canon<'a> {
    g: &'a Graph,
    n: usize,
    total_bits: usize,
    /// vertices grouped by colour, colours ascending
    cells: Vec<Vec<usize>>,
    /// for each position, the colour cell it must draw from
    cell_of_position: Vec<usize>,
    best: Option<u128>,
    best_perm: Vec<usize>,
}

impl Canon<'_> {
    fn column_bits(&self, order: &[usize], v: usize) -> u128 {
        // bits (i, j) for all i < j where j is the position being filled
        let mut col = 0u128;
        for &u in order {
            col = col << 1 | self.g.has_edge(u, v) as u128;
        }
        col
    }

    fn search(&mut self, order: &mut Vec<usize>, used: u64, prefix: u128) {
        let j = order.len();
        if j == self.n {
            if self.best.is_none_or(|b| prefix < b) {
                self.best = Some(prefix);
                self.best_perm = order.clone();
            }
            return;
        }
        let cell = self.cell_of_position[j];
        for idx in 0..self.cells[cell].len() {
            let v = self.cells[cell][idx];
            if used & bit(v) != 0 {
                continue;
            }
            let width = j; // bits contributed by column j
            let next = prefix << width | self.column_bits(order, v);
            let len = j * (j + 1) / 2;
            if let Some(b) = self.best {
                let best_prefix = b >> (self.total_bits - len);
                if next > best_prefix {
                    continue;
                }
            }
            order.push(v);
            self.search(order, used | bit(v), next);
            order.pop();
        }
    }
}

/// Canonical labelling: the lexicographically smallest upper-triangle bit
/// string over all vertex orders compatible with the refined colouring.
/// Returns the key and `perm` with `perm[v]` the canonical position of `v`.
pub fn canonical_form(g: &Graph) -> (CanonicalKey, Vec<usize>) {
    let n = g.n();
    assert!(
        n <= CANONICAL_LIMIT,
        "canonical form limited to {CANONICAL_LIMIT} vertices"
    );
    let colour = refine_colours(g);
    let k = colour.iter().max().map_or(0, |&c| c + 1);
    let mut cells = vec![Vec::new(); k];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    let cell_of_position = cells
        .iter()
        .enumerate()
        .flat_map(|(c, vs)| std::iter::repeat_n(c, vs.len()))
        .collect();
    let mut canon = Canon {
        g,
        n,
        total_bits: n * n.saturating_sub(1) / 2,
        cells,
        cell_of_position,
        best: None,
        best_perm: Vec::new(),
    };
    canon.search(&mut Vec::with_capacity(n), 0, 0);
    let mut perm = vec![0; n];
    for (pos, &v) in canon.best_perm.iter().enumerate() {
        perm[v] = pos;
    }
    (
        CanonicalKey {
            n,
            bits: canon.best.unwrap_or(0),
        },
        perm,
    )
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    canonical_form(g).0
}

/// The canonically relabelled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, perm) = canonical_form(g);
    g.permuted(&perm)
}

/// Degree-sequence screen followed by backtracking vertex-map search.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.m() != h.m() {
        return false;
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return false;
    }
    isomorphism(g, h).is_some()
}

/// A vertex map `phi` with `g.has_edge(u, v) == h.has_edge(phi[u], phi[v])`.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.m() != h.m() {
        return None;
    }
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut phi = vec![usize::MAX; n];
    fn extend(
        g: &Graph,
        h: &Graph,
        order: &[usize],
        depth: usize,
        phi: &mut [usize],
        used: u64,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..h.n() {
            if used & bit(w) != 0 || g.degree(v) != h.degree(w) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| g.has_edge(u, v) == h.has_edge(phi[u], w));
            if !consistent {
                continue;
            }
            phi[v] = w;
            if extend(g, h, order, depth + 1, phi, used | bit(w)) {
                return true;
            }
        }
        phi[v] = usize::MAX;
        false
    }
    extend(g, h, &order, 0, &mut phi, 0).then_some(phi)
}
