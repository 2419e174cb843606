//! Exact rank over the rationals by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{adjacency, skew_adjacency, Graph, IntegerMatrix, OrientedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    /// Pivot columns in elimination order.
    pub pivot_columns: Vec<usize>,
}

/// Rank of `m` over `Q`.
///
/// Columns are processed left to right; the pivot of a column is the first
/// remaining row, in index order, with a nonzero entry. Every intermediate
/// entry is a minor of `m`, so each division is exact.
pub fn rank_exact(m: &IntegerMatrix) -> RankResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| (0..cols).map(|c| BigInt::from(m.get(r, c))).collect())
        .collect();
    let mut prev = BigInt::from(1);
    let mut pivot_row = 0;
    let mut pivot_columns = Vec::new();
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        let (head, tail) = a.split_at_mut(pivot_row + 1);
        let pivot = &head[pivot_row];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let value = &pivot[c] * &row[j] - &factor * &pivot[j];
                debug_assert!((&value % &prev).is_zero());
                row[j] = value / &prev;
            }
        }
        prev = head[pivot_row][c].clone();
        pivot_columns.push(c);
        pivot_row += 1;
    }
    debug_assert!(pivot_columns.len() <= rows.min(cols));
    RankResult {
        rank: pivot_columns.len(),
        pivot_columns,
    }
}

/// Determinant of a square matrix, also by Bareiss elimination.
pub fn determinant(m: &IntegerMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| (0..n).map(|c| BigInt::from(m.get(r, c))).collect())
        .collect();
    let mut prev = BigInt::from(1);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = value / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `sr(G^σ)`: the rank of the skew-adjacency matrix. Always even.
pub fn skew_rank(g: &OrientedGraph) -> usize {
    let rank = rank_exact(&skew_adjacency(g)).rank;
    assert!(
        rank.is_multiple_of(2),
        "skew-symmetric matrix with odd rank {rank}"
    );
    rank
}

/// `r(G)`: the rank of the 0/1 adjacency matrix.
pub fn adjacency_rank(g: &Graph) -> usize {
    rank_exact(&adjacency(g)).rank
}

/// Absolute value of the largest entry, mostly for diagnostics.
pub fn max_abs_entry(m: &IntegerMatrix) -> BigInt {
    (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .map(|(r, c)| BigInt::from(m.get(r, c)).abs())
        .max()
        .unwrap_or_default()
}
