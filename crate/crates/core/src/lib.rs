//! Skew-rank and independence-number invariants of oriented graphs.
//!
//! The crate works with simple graphs on at most 64 vertices, stored as
//! adjacency bitmasks. Ranks are computed exactly over the rationals and
//! all bound comparisons are decided without floating point.

pub mod enumeration;
pub mod format;
pub mod graph;
pub mod invariants;
pub mod iso;
pub mod linalg;
pub mod radical;
pub mod reductions;
pub mod structure;
pub mod theorems;

pub use format::{decode_digraph6, decode_graph6, encode_digraph6, encode_graph6, FormatError};
pub use graph::{Graph, GraphError, IntegerMatrix, OrientedGraph};
pub use invariants::{alpha, matching_number};
pub use linalg::{rank_exact, skew_rank};
pub use radical::{ExactRadical, Rational};
pub use theorems::TheoremId;
