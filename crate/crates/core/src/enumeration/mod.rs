//! Exhaustive and sampled sweeps over small connected graphs and their
//! orientations.

mod extremal;
mod generate;
mod verify;

use thiserror::Error;

use crate::theorems::TheoremError;

pub use extremal::{search_extremal, Direction, Expression, ExtremalResult, Witness};
pub use generate::{
    enumerate_graphs, enumerate_orientations, enumerate_trees, random_cactus, random_graph,
    random_orientation, switching_representatives, Orientations, GRAPH_LIMIT,
    ORIENTATION_EDGE_LIMIT, TREE_LIMIT,
};
pub use verify::{
    verify_theorem, Counterexample, Verdict, VerificationReport, VerifyConfig, EXHAUSTIVE_LIMIT,
    SAMPLED_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("{what} = {value} exceeds the limit of {limit}")]
    Guard {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error(transparent)]
    Theorem(#[from] TheoremError),
}

pub(crate) fn guard(
    what: &'static str,
    value: usize,
    limit: usize,
) -> Result<(), EnumerationError> {
    if value > limit {
        Err(EnumerationError::Guard { what, value, limit })
    } else {
        Ok(())
    }
}

/// Maps `f` over `items`, keeping input order. `workers == 1` runs on the
/// calling thread, `0` uses every available core.
#[cfg(feature = "parallel")]
pub(crate) fn map_ordered<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if workers == 1 || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    pool.install(|| items.par_iter().map(f).collect())
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_ordered<T, R, F>(items: &[T], _workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Whether this build can run sweeps on more than one thread.
pub const PARALLEL: bool = cfg!(feature = "parallel");
