//! k-local split dissimilarities between labeled trees on `[n]`.
//!
//! A Cayley tree is a tree on the vertex set `{1, …, n}`. For an edge
//! `{u, v}` and a radius `k`, the k-local split is the pair of vertex sets
//! lying within distance `k` of `u` (resp. `v`) once the edge is removed. Two
//! trees are compared by how many of their `n − 1` k-local splits coincide:
//!
//! ```text
//! d_k(T, T') = 2(n − 1) − 2 · S_k(T, T')
//! ```
//!
//! The crate is organised in four layers:
//!
//! * [`trees`]: validated trees, Prüfer coding, uniform sampling and
//!   exhaustive enumeration.
//! * [`splits`]: k-local splits, split sets, shared counts and distances.
//! * [`exactcount`]: closed-form counts and reference laws, each paired with
//!   a brute-force enumeration oracle.
//! * [`montecarlo`]: a deterministic, worker-count independent simulation
//!   engine and the limit-law experiments built on it.

pub mod error;
pub mod exactcount;
pub mod montecarlo;
pub mod splits;
pub mod statistic;
pub mod trees;

pub use error::{Error, Result};
pub use splits::{
    k_local_split, rf_distance, rf_from_shared, shared_count, shared_leaf_count, split_set, Split, SplitSet, VertexSet,
};
pub use statistic::{Radius, Statistic};
pub use trees::{enumerate_trees, prufer_decode, prufer_encode, sample_tree, CayleyTree, PruferSequence};
