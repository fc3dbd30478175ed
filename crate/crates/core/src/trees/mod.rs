//! Labeled trees on `[n]`, Prüfer coding, sampling and enumeration.

mod enumerate;
mod prufer;
mod text;

use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::error::{input, Error, Result};

pub use enumerate::{enumerate_trees, enumerate_trees_capped, PruferCodes, TreeEnumerator, DEFAULT_ENUMERATION_CAP};
pub use prufer::{prufer_decode, prufer_encode, PruferSequence};
pub use text::parse_trees;

/// Vertex label. Labels run from 1 to `n` inclusive.
pub type Vertex = usize;

/// A tree on the vertex set `{1, …, n}`.
///
/// Edges are stored canonically as `(min, max)` pairs in lexicographic order,
/// so two trees are equal exactly when their edge sets are. Adjacency is kept
/// in compressed form with each neighbour list sorted ascending.
#[derive(Clone, Debug)]
pub struct CayleyTree {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    offsets: Vec<usize>,
    adjacency: Vec<Vertex>,
}

impl CayleyTree {
    /// Builds a tree from an edge list, normalising orientation and order.
    ///
    /// Fails unless the edges form a spanning tree of `[n]` with `n >= 2`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("trees need at least 2 vertices, got n={n}")));
        }
        let mut canonical = Vec::new();
        for (u, v) in edges {
            if canonical.len() == n - 1 {
                return input(format!("more than {} edges for n={n}", n - 1));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return input(format!("edge {u}-{v} has a label outside 1..={n}"));
            }
            if u == v {
                return input(format!("self loop at {u}"));
            }
            canonical.push((u.min(v), u.max(v)));
        }
        if canonical.len() != n - 1 {
            return input(format!("expected {} edges for n={n}, got {}", n - 1, canonical.len()));
        }
        canonical.sort_unstable();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return input(format!("duplicate edge {}-{}", w[0].0, w[0].1));
        }
        // n - 1 distinct edges form a tree iff they never close a cycle.
        let mut dsu: Vec<usize> = (0..=n).collect();
        for &(u, v) in &canonical {
            let (ru, rv) = (find(&mut dsu, u), find(&mut dsu, v));
            if ru == rv {
                return input(format!("edge {u}-{v} closes a cycle"));
            }
            dsu[ru] = rv;
        }
        Ok(Self::from_canonical(n, canonical))
    }

    /// Assumes `edges` is already a sorted canonical spanning tree of `[n]`.
    pub(crate) fn from_canonical(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut offsets = vec![0usize; n + 2];
        for &(u, v) in &edges {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![0; 2 * edges.len()];
        for &(u, v) in &edges {
            adjacency[fill[u]] = v;
            fill[u] += 1;
            adjacency[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 1..=n {
            adjacency[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        CayleyTree {
            n,
            edges,
            offsets,
            adjacency,
        }
    }

    /// The star on `[n]` whose centre is `center`.
    pub fn star(n: usize, center: Vertex) -> Result<Self> {
        if center == 0 || center > n {
            return input(format!("centre {center} outside 1..={n}"));
        }
        Self::new(n, (1..=n).filter(|&v| v != center).map(|v| (center, v)))
    }

    /// The path visiting `order` in sequence; `order` must be a permutation of `[n]`.
    pub fn path(order: &[Vertex]) -> Result<Self> {
        Self::new(order.len(), order.windows(2).map(|w| (w[0], w[1])))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical `(min, max)` edges in lexicographic order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Neighbours of `v`, ascending. Panics if `v` is not a label of the tree.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        assert!(v >= 1 && v <= self.n, "vertex {v} outside 1..={}", self.n);
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.degree(v) == 1
    }

    /// Vertices of degree one, ascending.
    pub fn leaf_set(&self) -> Vec<Vertex> {
        (1..=self.n).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn leaf_count(&self) -> usize {
        (1..=self.n).filter(|&v| self.is_leaf(v)).count()
    }

    /// Number of edges present in both trees. Both trees must share `n`.
    pub fn common_edges(&self, other: &CayleyTree) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let (mut i, mut j, mut shared) = (0, 0, 0);
        while i < self.edges.len() && j < other.edges.len() {
            match self.edges[i].cmp(&other.edges[j]) {
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

    /// Re-checks every structural invariant from scratch.
    pub fn check_invariants(&self) -> Result<()> {
        let rebuilt = CayleyTree::new(self.n, self.edges.iter().copied())?;
        if rebuilt.edges != self.edges {
            return input("edge list is not canonical");
        }
        for v in 1..=self.n {
            for &w in self.neighbors(v) {
                if !self.neighbors(w).contains(&v) || !self.has_edge(v, w) {
                    return input(format!("adjacency of {v} and {w} is inconsistent"));
                }
            }
        }
        let degree_sum: usize = (1..=self.n).map(|v| self.degree(v)).sum();
        if degree_sum != 2 * (self.n - 1) {
            return input("adjacency does not match the edge count");
        }
        Ok(())
    }
}

impl PartialEq for CayleyTree {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for CayleyTree {}

impl Hash for CayleyTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

fn find(dsu: &mut [usize], mut x: usize) -> usize {
    while dsu[x] != x {
        dsu[x] = dsu[dsu[x]];
        x = dsu[x];
    }
    x
}

/// Draws a uniformly random tree on `[n]` by decoding `n − 2` independent
/// uniform Prüfer symbols.
pub fn sample_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<CayleyTree> {
    if n < 2 {
        return Err(Error::Domain(format!("trees need at least 2 vertices, got n={n}")));
    }
    let symbols: Vec<usize> = (0..n - 2).map(|_| rng.random_range(1..=n)).collect();
    Ok(prufer::decode_unchecked(n, &symbols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn leaf_sets() {
        let path = CayleyTree::path(&[1, 2, 3, 4]).unwrap();
        assert_eq!(path.leaf_set(), vec![1, 4]);
        let star = CayleyTree::star(4, 2).unwrap();
        assert_eq!(star.leaf_set(), vec![1, 3, 4]);
        let edge = CayleyTree::new(2, [(2, 1)]).unwrap();
        assert_eq!(edge.leaf_set(), vec![1, 2]);
    }

    #[test]
    fn rejects_malformed_edge_lists() {
        assert!(matches!(CayleyTree::new(1, []), Err(Error::Domain(_))));
        assert!(CayleyTree::new(4, [(1, 2), (2, 3)]).is_err());
        assert!(CayleyTree::new(4, [(1, 2), (2, 3), (3, 1)]).is_err());
        assert!(CayleyTree::new(4, [(1, 2), (1, 2), (3, 4)]).is_err());
        assert!(CayleyTree::new(4, [(1, 2), (2, 3), (3, 5)]).is_err());
        assert!(CayleyTree::new(4, [(1, 1), (2, 3), (3, 4)]).is_err());
        assert!(CayleyTree::new(3, [(1, 2), (2, 3), (1, 3)]).is_err());
    }

    #[test]
    fn canonical_equality() {
        let a = CayleyTree::new(4, [(3, 2), (2, 1), (4, 2)]).unwrap();
        let b = CayleyTree::star(4, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edges(), &[(1, 2), (2, 3), (2, 4)]);
        a.check_invariants().unwrap();
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_tree(30, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        let b = sample_tree(30, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        assert_eq!(a, b);
        a.check_invariants().unwrap();
        let two = sample_tree(2, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(two.edges(), &[(1, 2)]);
        assert!(sample_tree(1, &mut ChaCha8Rng::seed_from_u64(5)).is_err());
    }

    #[test]
    fn common_edges_star_vs_path() {
        let star = CayleyTree::star(4, 2).unwrap();
        let path = CayleyTree::path(&[1, 2, 3, 4]).unwrap();
        assert_eq!(star.common_edges(&path).unwrap(), 2);
        let other = CayleyTree::path(&[1, 2, 3]).unwrap();
        assert!(matches!(star.common_edges(&other), Err(Error::SizeMismatch { .. })));
    }
}
