//! Per-sample statistics shared by the exact oracles and the simulator.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::splits::{effective_radius, shared_leaf_count, split_set};
use crate::trees::CayleyTree;

/// A split radius, either absolute or measured down from the maximum `n − 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Radius {
    Fixed(usize),
    /// `n − 2 − j`, saturating at zero.
    BelowMax(usize),
}

impl Radius {
    /// Radius for `n − 2` (full bipartitions).
    pub const FULL: Radius = Radius::BelowMax(0);

    pub fn resolve(self, n: usize) -> usize {
        match self {
            Radius::Fixed(k) => effective_radius(n, k),
            Radius::BelowMax(j) => n.saturating_sub(2).saturating_sub(j),
        }
    }
}

/// What is recorded for each sampled (or enumerated) tree or pair of trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Statistic {
    /// Shared k-local splits of a pair.
    SharedSplits(Radius),
    /// Vertices that are leaves in both trees of a pair.
    SharedLeaves,
    /// k-RF distance of a pair.
    Distance(Radius),
    /// Leaves of a single tree.
    LeafCount,
}

impl Statistic {
    /// Whether the statistic needs a pair of trees.
    pub fn is_pair(self) -> bool {
        !matches!(self, Statistic::LeafCount)
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::SharedSplits(_) => "shared-splits",
            Statistic::SharedLeaves => "shared-leaves",
            Statistic::Distance(_) => "distance",
            Statistic::LeafCount => "leaf-count",
        }
    }

    /// The radius this statistic uses on `[n]`, if any.
    pub fn radius(self, n: usize) -> Option<usize> {
        match self {
            Statistic::SharedSplits(r) | Statistic::Distance(r) => Some(r.resolve(n)),
            _ => None,
        }
    }

    /// Evaluates on a pair; single-tree statistics read only `t1`.
    pub fn evaluate(self, t1: &CayleyTree, t2: &CayleyTree) -> Result<i64> {
        let n = t1.n();
        Ok(match self {
            Statistic::SharedSplits(r) => {
                let k = r.resolve(n);
                split_set(t1, k).shared_with(&split_set(t2, k))? as i64
            }
            Statistic::Distance(r) => {
                let k = r.resolve(n);
                split_set(t1, k).symmetric_difference_len(&split_set(t2, k))? as i64
            }
            Statistic::SharedLeaves => shared_leaf_count(t1, t2)? as i64,
            Statistic::LeafCount => t1.leaf_count() as i64,
        })
    }
}
