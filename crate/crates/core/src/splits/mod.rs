//! k-local splits, split sets and the k-RF dissimilarity.

mod local;
mod vertex_set;

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;

use crate::error::{input, parse_err, Error, Result};
use crate::trees::{CayleyTree, Vertex};

pub use local::{effective_radius, k_local_split, split_set};
pub use vertex_set::VertexSet;

/// An unordered pair of disjoint, nonempty vertex sets `A|B`.
///
/// Stored with the side holding the smaller minimum label first, so derived
/// equality is equality of unordered pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    a: VertexSet,
    b: VertexSet,
}

impl Split {
    pub fn new(a: VertexSet, b: VertexSet) -> Result<Self> {
        let (Some(min_a), Some(min_b)) = (a.min_label(), b.min_label()) else {
            return input("split sides must be nonempty");
        };
        if !a.is_disjoint(&b) {
            return input("split sides must be disjoint");
        }
        Ok(if min_a < min_b {
            Split { a, b }
        } else {
            Split { a: b, b: a }
        })
    }

    /// The side containing the smallest label.
    pub fn first(&self) -> &VertexSet {
        &self.a
    }

    pub fn second(&self) -> &VertexSet {
        &self.b
    }

    /// True when one side is a single vertex.
    pub fn has_singleton_side(&self) -> bool {
        self.a.len() == 1 || self.b.len() == 1
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, &self.a)?;
        f.write_str("|")?;
        write_side(f, &self.b)
    }
}

fn write_side(f: &mut fmt::Formatter<'_>, side: &VertexSet) -> fmt::Result {
    for (i, v) in side.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Largest label accepted when parsing split text; keeps bit vectors bounded.
const MAX_PARSED_LABEL: usize = 1 << 20;

impl FromStr for Split {
    type Err = Error;

    /// Parses `A|B`, e.g. `1,2|3,4`. Sides may be given in either order.
    fn from_str(s: &str) -> Result<Self> {
        let Some((a, b)) = s.trim().split_once('|') else {
            return parse_err(1, "split needs exactly one `|`");
        };
        let side = |text: &str| -> Result<VertexSet> {
            let mut set = VertexSet::new();
            for item in text.split(',') {
                let item = item.trim();
                let v: usize = match item.parse() {
                    Ok(v) if (1..=MAX_PARSED_LABEL).contains(&v) => v,
                    _ => return parse_err(1, format!("bad vertex label {item:?}")),
                };
                if set.contains(v) {
                    return parse_err(1, format!("label {v} repeated"));
                }
                set.insert(v);
            }
            Ok(set)
        };
        let (a, b) = (side(a)?, side(b)?);
        Split::new(a, b).map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })
    }
}

/// The `n − 1` k-local splits of one tree, for a fixed (clamped) radius.
///
/// Internally each split is a fixed-width row of `2 · width` words (first
/// side, then second side); rows are kept sorted so intersections are a
/// linear merge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSet {
    n: usize,
    k: usize,
    width: usize,
    rows: Vec<u64>,
}

impl SplitSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The effective radius, already clamped to `n − 2`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.rows.len() / (2 * self.width)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * 2 * self.width..(i + 1) * 2 * self.width]
    }

    fn rows(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.rows.chunks_exact(2 * self.width)
    }

    fn decode(&self, row: &[u64]) -> Split {
        let (a, b) = row.split_at(self.width);
        Split {
            a: VertexSet::from_words(a),
            b: VertexSet::from_words(b),
        }
    }

    /// Splits in storage order (not label order).
    pub fn iter(&self) -> impl Iterator<Item = Split> + '_ {
        self.rows().map(|r| self.decode(r))
    }

    /// Splits sorted by their label lists.
    pub fn sorted(&self) -> Vec<Split> {
        let mut splits: Vec<Split> = self.iter().collect();
        splits.sort();
        splits
    }

    pub fn contains(&self, split: &Split) -> bool {
        let mut probe = vec![0u64; 2 * self.width];
        let (a, b) = probe.split_at_mut(self.width);
        if split.a.write_words(a).is_none() || split.b.write_words(b).is_none() {
            return false;
        }
        self.find(&probe).is_some()
    }

    fn find(&self, probe: &[u64]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.row(mid).cmp(probe) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    fn check_compatible(&self, other: &SplitSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.k != other.k {
            return input(format!("split sets have different radii {} and {}", self.k, other.k));
        }
        Ok(())
    }

    /// Number of splits present in both sets.
    pub fn shared_with(&self, other: &SplitSet) -> Result<usize> {
        self.check_compatible(other)?;
        let (mut i, mut j, mut shared) = (0, 0, 0);
        let (len_a, len_b) = (self.len(), other.len());
        while i < len_a && j < len_b {
            match self.row(i).cmp(other.row(j)) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    shared += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(shared)
    }

    /// The shared splits themselves.
    pub fn intersection(&self, other: &SplitSet) -> Result<Vec<Split>> {
        self.check_compatible(other)?;
        Ok(self
            .rows()
            .filter(|r| other.find(r).is_some())
            .map(|r| self.decode(r))
            .collect())
    }

    /// Size of the symmetric difference, counted through a hash set rather
    /// than the sorted merge used by [`SplitSet::shared_with`].
    pub fn symmetric_difference_len(&self, other: &SplitSet) -> Result<usize> {
        self.check_compatible(other)?;
        let left: FxHashSet<&[u64]> = self.rows().collect();
        let right: FxHashSet<&[u64]> = other.rows().collect();
        Ok(left.symmetric_difference(&right).count())
    }
}

/// One split per line, in label order.
impl fmt::Display for SplitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, split) in self.sorted().iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{split}")?;
        }
        Ok(())
    }
}

fn same_n(t1: &CayleyTree, t2: &CayleyTree) -> Result<usize> {
    if t1.n() != t2.n() {
        return Err(Error::SizeMismatch {
            left: t1.n(),
            right: t2.n(),
        });
    }
    Ok(t1.n())
}

/// `S_k(T, T')`: the number of k-local splits the two trees share.
pub fn shared_count(t1: &CayleyTree, t2: &CayleyTree, k: usize) -> Result<usize> {
    same_n(t1, t2)?;
    split_set(t1, k).shared_with(&split_set(t2, k))
}

/// `d_k(T, T') = 2(n − 1) − 2 S_k(T, T')`.
pub fn rf_distance(t1: &CayleyTree, t2: &CayleyTree, k: usize) -> Result<usize> {
    let n = same_n(t1, t2)?;
    rf_from_shared(n, shared_count(t1, t2, k)?)
}

/// Distance implied by `s` shared splits on `[n]`.
pub fn rf_from_shared(n: usize, s: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::Domain(format!("distances need n >= 2, got n={n}")));
    }
    if s > n - 1 {
        return input(format!("shared count {s} exceeds n-1={}", n - 1));
    }
    Ok(2 * (n - 1) - 2 * s)
}

/// Number of vertices that are leaves in both trees.
pub fn shared_leaf_count(t1: &CayleyTree, t2: &CayleyTree) -> Result<usize> {
    let n = same_n(t1, t2)?;
    Ok((1..=n).filter(|&v| t1.is_leaf(v) && t2.is_leaf(v)).count())
}

/// Builds a split from two label lists; convenient in tests and fixtures.
pub fn split_of(a: &[Vertex], b: &[Vertex]) -> Result<Split> {
    Split::new(a.iter().copied().collect(), b.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> CayleyTree {
        CayleyTree::path(&[1, 2, 3, 4]).unwrap()
    }

    fn star4() -> CayleyTree {
        CayleyTree::star(4, 2).unwrap()
    }

    #[test]
    fn split_canonical_order_and_text() {
        let s = split_of(&[3, 4], &[1, 2]).unwrap();
        assert_eq!(s.first().iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(s.to_string(), "1,2|3,4");
        assert_eq!("3,4|2,1".parse::<Split>().unwrap(), s);
        assert!(split_of(&[], &[1]).is_err());
        assert!(split_of(&[1, 2], &[2]).is_err());
        for bad in ["1,2", "1|1", "|1", "1|2|3", "0|1", "a|1", "1,1|2"] {
            assert!(bad.parse::<Split>().is_err(), "{bad}");
        }
    }

    #[test]
    fn split_set_display() {
        let set = split_set(&path4(), 2);
        assert_eq!(set.to_string(), "1|2,3,4\n1,2|3,4\n1,2,3|4");
        let zero = split_set(&star4(), 0);
        assert_eq!(zero.to_string(), "1|2\n2|3\n2|4");
    }

    #[test]
    fn shared_counts_and_distances() {
        let (p, s) = (path4(), star4());
        assert_eq!(shared_count(&s, &p, 0).unwrap(), 2);
        assert_eq!(rf_distance(&s, &p, 0).unwrap(), 2);
        for k in 0..5 {
            assert_eq!(shared_count(&p, &p, k).unwrap(), 3);
            assert_eq!(rf_distance(&p, &p, k).unwrap(), 0);
        }
        let other = CayleyTree::path(&[1, 2, 3]).unwrap();
        assert!(matches!(shared_count(&p, &other, 0), Err(Error::SizeMismatch { .. })));
        assert!(matches!(rf_distance(&p, &other, 0), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn distance_from_shared_count() {
        assert_eq!(rf_from_shared(6, 3).unwrap(), 4);
        assert_eq!(rf_from_shared(6, 1).unwrap(), 8);
        assert_eq!(rf_from_shared(9, 8).unwrap(), 0);
        assert!(rf_from_shared(6, 6).is_err());
        assert!(rf_from_shared(1, 0).is_err());
    }

    #[test]
    fn shared_leaves() {
        let (p, s) = (path4(), star4());
        assert_eq!(shared_leaf_count(&p, &s).unwrap(), 2);
        assert_eq!(shared_leaf_count(&s, &s).unwrap(), 3);
        let shifted = CayleyTree::path(&[4, 1, 2, 3]).unwrap();
        assert_eq!(shared_leaf_count(&p, &shifted).unwrap(), 1);
    }

    #[test]
    fn membership_and_symmetric_difference() {
        let (p, s) = (path4(), star4());
        let (sp, ss) = (split_set(&p, 0), split_set(&s, 0));
        assert!(sp.contains(&split_of(&[2], &[3]).unwrap()));
        assert!(!sp.contains(&split_of(&[2], &[4]).unwrap()));
        assert!(!sp.contains(&split_of(&[2], &[400]).unwrap()));
        assert_eq!(sp.symmetric_difference_len(&ss).unwrap(), 2);
        assert_eq!(sp.intersection(&ss).unwrap().len(), 2);
        assert!(sp.shared_with(&split_set(&p, 1)).is_err());
    }
}
