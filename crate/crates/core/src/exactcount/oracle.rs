//! Brute-force counterparts of the closed forms, by exhaustive enumeration
//! of Cayley trees on small vertex sets.

use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::forest::ForestSpec;
use super::formulas::SingletonRadius;
use super::shapes::{ShapeSizes, SplitShape};
use crate::error::{input, Error, Result};
use crate::splits::{k_local_split, shared_leaf_count, split_set, Split, SplitSet};
use crate::statistic::Statistic;
use crate::trees::{enumerate_trees_capped, CayleyTree, Vertex};

/// Largest `n` at which each kind of exhaustive enumeration is attempted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct OracleCaps {
    /// Statistics of ordered pairs: `n^(2(n−2))` pairs.
    pub pairs: usize,
    /// Statistics of single trees: `n^(n−2)` trees.
    pub single: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps { pairs: 6, single: 9 }
    }
}

/// An exact law as integer counts over a common total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactLaw {
    pub statistic: Statistic,
    pub n: usize,
    /// Resolved radius, for split-based statistics.
    pub k: Option<usize>,
    pub counts: BTreeMap<i64, u64>,
    pub total: u64,
}

fn q(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

impl ExactLaw {
    pub fn probability(&self, value: i64) -> BigRational {
        q(self.counts.get(&value).copied().unwrap_or(0), self.total)
    }

    pub fn probability_f64(&self, value: i64) -> f64 {
        self.counts.get(&value).copied().unwrap_or(0) as f64 / self.total as f64
    }

    pub fn mean_exact(&self) -> BigRational {
        self.factorial_moment(1)
    }

    /// `E[X(X−1)⋯(X−k+1)]`.
    pub fn factorial_moment(&self, k: usize) -> BigRational {
        let sum = self.counts.iter().fold(BigInt::zero(), |acc, (&v, &c)| {
            let falling = (0..k as i64).fold(BigInt::one(), |f, i| f * (v - i));
            acc + falling * c
        });
        BigRational::new(sum, BigInt::from(self.total))
    }

    pub fn iter_f64(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c as f64 / self.total as f64))
    }

    /// `{statistic, n, k, law: [[value, numerator, denominator]], mean}` with
    /// reduced fractions written as decimal strings.
    pub fn to_json(&self) -> Value {
        let law: Vec<Value> = self
            .counts
            .keys()
            .map(|&v| {
                let p = self.probability(v);
                json!([v, p.numer().to_string(), p.denom().to_string()])
            })
            .collect();
        let mean = self.mean_exact();
        json!({
            "statistic": self.statistic.name(),
            "n": self.n,
            "k": self.k,
            "law": law,
            "mean": format!("{}/{}", mean.numer(), mean.denom()),
        })
    }
}

pub fn exact_statistic_law(n: usize, statistic: Statistic) -> Result<ExactLaw> {
    exact_statistic_law_capped(n, statistic, OracleCaps::default())
}

fn merge(mut a: BTreeMap<i64, u64>, b: BTreeMap<i64, u64>) -> BTreeMap<i64, u64> {
    for (v, c) in b {
        *a.entry(v).or_default() += c;
    }
    a
}

fn leaf_mask(tree: &CayleyTree) -> u64 {
    tree.leaf_set().iter().fold(0, |m, &v| m | 1 << (v - 1))
}

/// Exact law of `statistic` over all ordered pairs of trees on `[n]` (or all
/// trees, for single-tree statistics), partitioned over worker threads.
pub fn exact_statistic_law_capped(n: usize, statistic: Statistic, caps: OracleCaps) -> Result<ExactLaw> {
    let k = statistic.radius(n);
    if !statistic.is_pair() {
        let mut counts = BTreeMap::new();
        let mut total = 0;
        for tree in enumerate_trees_capped(n, caps.single)? {
            *counts.entry(statistic.evaluate(&tree, &tree)?).or_default() += 1;
            total += 1;
        }
        return Ok(ExactLaw {
            statistic,
            n,
            k,
            counts,
            total,
        });
    }
    let trees: Vec<CayleyTree> = enumerate_trees_capped(n, caps.pairs)?.collect();
    let m = trees.len() as u64;
    let total = m
        .checked_mul(m)
        .ok_or_else(|| Error::Resource(format!("pair count overflows at n={n}")))?;
    let counts = match statistic {
        Statistic::SharedSplits(_) | Statistic::Distance(_) => {
            let sets: Vec<SplitSet> = trees.iter().map(|t| split_set(t, k.unwrap_or(0))).collect();
            let shared = matches!(statistic, Statistic::SharedSplits(_));
            sets.par_iter()
                .map(|a| {
                    let mut local = BTreeMap::new();
                    for b in &sets {
                        let v = if shared {
                            a.shared_with(b)?
                        } else {
                            a.symmetric_difference_len(b)?
                        };
                        *local.entry(v as i64).or_default() += 1;
                    }
                    Ok(local)
                })
                .try_reduce(BTreeMap::new, |a, b| Ok(merge(a, b)))?
        }
        Statistic::SharedLeaves => {
            let masks: Vec<u64> = trees.iter().map(leaf_mask).collect();
            masks
                .par_iter()
                .map(|a| {
                    let mut local = BTreeMap::new();
                    for b in &masks {
                        *local.entry((a & b).count_ones() as i64).or_default() += 1;
                    }
                    local
                })
                .reduce(BTreeMap::new, merge)
        }
        Statistic::LeafCount => unreachable!("single-tree statistic"),
    };
    Ok(ExactLaw {
        statistic,
        n,
        k,
        counts,
        total,
    })
}

/// Trees on `[spec.n]` containing every edge of the forest, by enumeration.
pub fn trees_containing_forest_by_enumeration(spec: &ForestSpec, caps: OracleCaps) -> Result<u64> {
    let edges: Vec<(Vertex, Vertex)> = spec.edges().collect();
    Ok(enumerate_trees_capped(spec.n(), caps.single)?
        .filter(|t| edges.iter().all(|&(u, v)| t.has_edge(u, v)))
        .count() as u64)
}

fn tree_counts_by_enumeration(max: usize, cap: usize) -> Result<Vec<u64>> {
    let mut counts = vec![1, 1];
    for q in 2..=max {
        counts.push(enumerate_trees_capped(q, cap)?.count() as u64);
    }
    Ok(counts)
}

/// Ordered forests of `s` trees on `n` vertices where each tree holds its
/// own copy of label 1 and the other `n − s` labels are distinct.
///
/// Every assignment of the `n − s` extra labels to the `s` trees is visited,
/// and the trees on each part are counted by enumeration.
pub fn ordered_forests_by_enumeration(n: usize, s: usize, caps: OracleCaps) -> Result<u64> {
    if s < 1 || s > n {
        return input(format!("forest count needs 1 <= s <= n, got s={s}, n={n}"));
    }
    if n > caps.single {
        return Err(Error::CapExceeded {
            what: "ordered forest enumeration",
            n,
            cap: caps.single,
        });
    }
    let extra = n - s;
    let trees_on = tree_counts_by_enumeration(extra + 1, caps.single)?;
    let mut assignment = vec![0usize; extra];
    let mut total = 0u64;
    loop {
        let mut sizes = vec![1usize; s];
        for &part in &assignment {
            sizes[part] += 1;
        }
        total += sizes.iter().map(|&q| trees_on[q]).product::<u64>();
        let mut i = 0;
        loop {
            if i == extra {
                return Ok(total);
            }
            assignment[i] += 1;
            if assignment[i] < s {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Whether `tree` has the edge `α–β` with 1-local split exactly `shape`.
pub fn contains_anchored_shape(tree: &CayleyTree, shape: &SplitShape) -> bool {
    tree.has_edge(shape.alpha(), shape.beta())
        && k_local_split(tree, shape.alpha(), shape.beta(), 1).is_ok_and(|s| s == shape.to_split())
}

/// Trees on `[n]` containing the anchored shape, by enumeration.
pub fn anchored_shape_count_by_enumeration(n: usize, shape: &SplitShape, caps: OracleCaps) -> Result<u64> {
    if shape.max_label() > n {
        return input(format!("shape uses label {} beyond n={n}", shape.max_label()));
    }
    Ok(enumerate_trees_capped(n, caps.single)?
        .filter(|t| contains_anchored_shape(t, shape))
        .count() as u64)
}

/// Labeled instances of a 1-local split shape on `[n]`, counted three ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ShapeCensus {
    /// Tuples `(α, β, ys, xs)` with `ys`, `xs` unordered.
    pub anchored: u64,
    /// Anchored tuples with `(α, ys)` and `(β, xs)` interchangeable.
    pub anchored_unordered: u64,
    /// Distinct bipartitions `{α} ∪ ys | {β} ∪ xs` of their support.
    pub distinct_splits: u64,
}

fn combinations(pool: &[Vertex], r: usize) -> Vec<Vec<Vertex>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in pool.iter().enumerate() {
        for mut rest in combinations(&pool[i + 1..], r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

type Arm = (Vertex, Vec<Vertex>);

pub fn enumerate_split_shapes(n: usize, sizes: ShapeSizes) -> Result<ShapeCensus> {
    sizes.validate()?;
    let (l, k) = sizes.arms();
    if n < l + k + 2 {
        return input(format!("{sizes:?} needs {} labels, n={n}", l + k + 2));
    }
    if n > 12 {
        return Err(Error::CapExceeded {
            what: "split shape enumeration",
            n,
            cap: 12,
        });
    }
    let mut anchored = 0u64;
    let mut unordered: HashSet<(Arm, Arm)> = HashSet::new();
    let mut splits: HashSet<Split> = HashSet::new();
    for alpha in 1..=n {
        for beta in (1..=n).filter(|&b| b != alpha) {
            let rest: Vec<Vertex> = (1..=n).filter(|&v| v != alpha && v != beta).collect();
            for ys in combinations(&rest, l) {
                let left: Vec<Vertex> = rest.iter().copied().filter(|v| !ys.contains(v)).collect();
                for xs in combinations(&left, k) {
                    anchored += 1;
                    let shape = SplitShape::new(alpha, beta, ys.clone(), xs.clone())?;
                    splits.insert(shape.to_split());
                    let (a, b) = ((alpha, ys.clone()), (beta, xs));
                    unordered.insert(if a <= b { (a, b) } else { (b, a) });
                }
            }
        }
    }
    Ok(ShapeCensus {
        anchored,
        anchored_unordered: unordered.len() as u64,
        distinct_splits: splits.len() as u64,
    })
}

/// Expected number of shared full (`n − 2`-local) splits whose smaller
/// side has size `k`, for each `k`, over all ordered pairs.
pub fn shared_bipartitions_by_size(n: usize, caps: OracleCaps) -> Result<BTreeMap<usize, BigRational>> {
    let trees: Vec<CayleyTree> = enumerate_trees_capped(n, caps.pairs)?.collect();
    let sets: Vec<SplitSet> = trees.iter().map(|t| split_set(t, n.saturating_sub(2))).collect();
    let sums = sets
        .par_iter()
        .map(|a| {
            let mut local: BTreeMap<usize, u64> = BTreeMap::new();
            for b in &sets {
                for split in a.intersection(b)? {
                    *local.entry(split.first().len().min(split.second().len())).or_default() += 1;
                }
            }
            Ok(local)
        })
        .try_reduce(BTreeMap::new, |mut x, y| {
            for (k, c) in y {
                *x.entry(k).or_default() += c;
            }
            Ok(x)
        })?;
    let total = (trees.len() as u64).pow(2);
    Ok(sums.into_iter().map(|(k, c)| (k, q(c, total))).collect())
}

/// Exact probability that two independent trees both contain
/// `{x} | [n]∖{x}` at the given radius.
///
/// The pair event is the product of two single-tree events, so the count of
/// pairs is the square of the count of trees containing the split.
pub fn singleton_split_probability_exact(
    n: usize,
    radius: SingletonRadius,
    x: Vertex,
    caps: OracleCaps,
) -> Result<BigRational> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "singleton split probabilities need n >= 3, got n={n}"
        )));
    }
    if x < 1 || x > n {
        return input(format!("label {x} outside 1..={n}"));
    }
    if n > caps.pairs {
        return Err(Error::CapExceeded {
            what: "singleton split oracle",
            n,
            cap: caps.pairs,
        });
    }
    let rest: Vec<Vertex> = (1..=n).filter(|&v| v != x).collect();
    let target = crate::splits::split_of(&[x], &rest)?;
    let k = radius.resolve(n);
    let mut hits = 0u64;
    let mut total = 0u64;
    for tree in enumerate_trees_capped(n, caps.pairs)? {
        total += 1;
        if split_set(&tree, k).contains(&target) {
            hits += 1;
        }
    }
    Ok(q(BigUint::from(hits).pow(2u32), BigUint::from(total).pow(2u32)))
}

/// Mean shared-leaf count by direct pair enumeration, without the law.
pub fn shared_leaf_mean_by_pairs(n: usize, caps: OracleCaps) -> Result<BigRational> {
    let trees: Vec<CayleyTree> = enumerate_trees_capped(n, caps.pairs)?.collect();
    let mut sum = 0u64;
    for a in &trees {
        for b in &trees {
            sum += shared_leaf_count(a, b)? as u64;
        }
    }
    Ok(q(sum, (trees.len() as u64).pow(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statistic::Radius;

    #[test]
    fn exact_shared_edge_laws() {
        let law = exact_statistic_law(4, Statistic::SharedSplits(Radius::Fixed(0))).unwrap();
        assert_eq!(law.total, 256);
        assert_eq!(law.mean_exact(), q(3, 2));
        let expected: BTreeMap<i64, u64> = [(0, 12), (1, 120), (2, 108), (3, 16)].into();
        assert_eq!(law.counts, expected);
        let five = exact_statistic_law(5, Statistic::SharedSplits(Radius::Fixed(0))).unwrap();
        let expected: BTreeMap<i64, u64> = [(0, 1140), (1, 6080), (2, 6420), (3, 1860), (4, 125)].into();
        assert_eq!(five.counts, expected);
        assert_eq!(five.mean_exact(), q(8, 5));
    }

    #[test]
    fn exact_leaf_laws() {
        let leaves = exact_statistic_law(4, Statistic::SharedLeaves).unwrap();
        assert_eq!(leaves.mean_exact(), q(81, 64));
        assert_eq!(leaves.factorial_moment(2), q(3, 4));
        assert_eq!(shared_leaf_mean_by_pairs(4, OracleCaps::default()).unwrap(), q(81, 64));
        let count = exact_statistic_law(5, Statistic::LeafCount).unwrap();
        assert_eq!(count.total, 125);
        assert_eq!(count.mean_exact(), q(64, 25));
    }

    #[test]
    fn caps_are_enforced() {
        let err = exact_statistic_law(7, Statistic::SharedLeaves).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { n: 7, cap: 6, .. }));
        let err = exact_statistic_law(10, Statistic::LeafCount).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { n: 10, cap: 9, .. }));
    }

    #[test]
    fn json_export() {
        let law = exact_statistic_law(3, Statistic::SharedSplits(Radius::Fixed(0))).unwrap();
        let value = law.to_json();
        assert_eq!(value["statistic"], "shared-splits");
        assert_eq!(value["n"], 3);
        assert_eq!(value["k"], 0);
        assert_eq!(value["mean"], "4/3");
        assert_eq!(value["law"][0], json!([1, "2", "3"]));
    }

    #[test]
    fn forest_oracles() {
        let caps = OracleCaps::default();
        let spec = ForestSpec::parse(4, "1-2;3;4").unwrap();
        assert_eq!(trees_containing_forest_by_enumeration(&spec, caps).unwrap(), 8);
        assert_eq!(ordered_forests_by_enumeration(4, 2, caps).unwrap(), 8);
        assert_eq!(ordered_forests_by_enumeration(5, 5, caps).unwrap(), 1);
        assert_eq!(ordered_forests_by_enumeration(2, 1, caps).unwrap(), 1);
    }

    #[test]
    fn shape_oracles() {
        let caps = OracleCaps::default();
        let t1 = SplitShape::canonical(ShapeSizes::Type1 { k: 1 }).unwrap();
        assert_eq!(anchored_shape_count_by_enumeration(4, &t1, caps).unwrap(), 1);
        assert_eq!(
            enumerate_split_shapes(4, ShapeSizes::Type1 { k: 1 }).unwrap().anchored,
            24
        );
        assert_eq!(
            enumerate_split_shapes(3, ShapeSizes::Type1 { k: 1 }).unwrap().anchored,
            6
        );
        let census = enumerate_split_shapes(5, ShapeSizes::Type2 { l: 1, k: 1 }).unwrap();
        assert_eq!(
            (census.anchored, census.anchored_unordered, census.distinct_splits),
            (120, 60, 15)
        );
    }

    #[test]
    fn bipartitions_by_size() {
        let sizes = shared_bipartitions_by_size(4, OracleCaps::default()).unwrap();
        assert_eq!(sizes[&1], q(81, 64));
        assert_eq!(sizes[&2], q(3, 16));
    }

    #[test]
    fn singleton_probabilities() {
        let caps = OracleCaps::default();
        assert_eq!(
            singleton_split_probability_exact(4, SingletonRadius::Full, 1, caps).unwrap(),
            q(81, 256)
        );
        assert_eq!(
            singleton_split_probability_exact(4, SingletonRadius::BelowFull, 3, caps).unwrap(),
            q(9, 256)
        );
        assert!(singleton_split_probability_exact(7, SingletonRadius::Full, 1, caps).is_err());
    }
}
