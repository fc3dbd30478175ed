use super::vertex_set::{lowest_label, VertexSet};
use super::{Split, SplitSet};
use crate::error::{input, Result};
use crate::trees::{CayleyTree, Vertex};

/// Radii beyond `n − 2` reach every vertex of both components.
pub fn effective_radius(n: usize, k: usize) -> usize {
    k.min(n.saturating_sub(2))
}

/// The k-local split of `tree` for edge `{u, v}`, by bounded breadth-first
/// search on each side of the edge.
pub fn k_local_split(tree: &CayleyTree, u: Vertex, v: Vertex, k: usize) -> Result<Split> {
    if u == 0 || v == 0 || u > tree.n() || v > tree.n() || !tree.has_edge(u, v) {
        return input(format!("{u}-{v} is not an edge of the tree"));
    }
    let k = effective_radius(tree.n(), k);
    let side = |root: Vertex, avoid: Vertex| -> VertexSet {
        let mut set = VertexSet::new();
        let mut frontier = vec![(root, avoid)];
        set.insert(root);
        for _ in 0..k {
            let mut next = Vec::new();
            for &(x, from) in &frontier {
                for &y in tree.neighbors(x) {
                    if y != from {
                        set.insert(y);
                        next.push((y, x));
                    }
                }
            }
            frontier = next;
        }
        set
    };
    Split::new(side(u, v), side(v, u))
}

struct Rooted {
    order: Vec<Vertex>,
    parent: Vec<Vertex>,
    /// Depth of the subtree below each vertex.
    height: Vec<usize>,
    /// Farthest distance from each vertex to a vertex outside its subtree
    /// (0 at the root, which only reaches itself that way).
    up: Vec<usize>,
    best: Vec<(usize, Vertex)>,
    second: Vec<usize>,
}

impl Rooted {
    fn new(tree: &CayleyTree) -> Self {
        let n = tree.n();
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![0; n + 1];
        order.push(1);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in tree.neighbors(v) {
                if w != parent[v] {
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
        let mut height = vec![0; n + 1];
        let mut best = vec![(0, 0); n + 1];
        let mut second = vec![0; n + 1];
        for &c in order.iter().rev() {
            let p = parent[c];
            if p == 0 {
                continue;
            }
            let reach = height[c] + 1;
            if reach > best[p].0 {
                second[p] = best[p].0;
                best[p] = (reach, c);
            } else if reach > second[p] {
                second[p] = reach;
            }
            height[p] = best[p].0;
        }
        let mut rooted = Rooted {
            order,
            parent,
            height,
            up: vec![0; n + 1],
            best,
            second,
        };
        for i in 1..rooted.order.len() {
            let c = rooted.order[i];
            let p = rooted.parent[c];
            rooted.up[c] = 1 + rooted.reach_from_parent_side(p, c);
        }
        rooted
    }

    /// Eccentricity of `p` in the component of `p` once edge `p–c` is cut.
    fn reach_from_parent_side(&self, p: Vertex, c: Vertex) -> usize {
        let sibling = if self.best[p].1 == c {
            self.second[p]
        } else {
            self.best[p].0
        };
        self.up[p].max(sibling)
    }
}

fn set_bit(words: &mut [u64], v: Vertex) {
    words[(v - 1) / 64] |= 1 << ((v - 1) % 64);
}

fn bounded_side(
    tree: &CayleyTree,
    root: Vertex,
    avoid: Vertex,
    k: usize,
    out: &mut [u64],
    queue: &mut Vec<(Vertex, Vertex, usize)>,
) {
    out.fill(0);
    set_bit(out, root);
    queue.clear();
    queue.push((root, avoid, 0));
    let mut head = 0;
    while head < queue.len() {
        let (x, from, depth) = queue[head];
        head += 1;
        if depth == k {
            continue;
        }
        for &y in tree.neighbors(x) {
            if y != from {
                set_bit(out, y);
                queue.push((y, x, depth + 1));
            }
        }
    }
}

/// All `n − 1` k-local splits of `tree` (`k` clamped to `n − 2`).
///
/// A side equals its whole component whenever the component's eccentricity
/// from the edge endpoint is at most `k`; those sides come from subtree bit
/// vectors, and only the remaining sides are traversed with a depth-bounded
/// search.
pub fn split_set(tree: &CayleyTree, k: usize) -> SplitSet {
    let n = tree.n();
    let k = effective_radius(n, k);
    let width = n.div_ceil(64);
    let rooted = Rooted::new(tree);

    let mut subtree = vec![0u64; (n + 1) * width];
    for &c in rooted.order.iter().rev() {
        set_bit(&mut subtree[c * width..(c + 1) * width], c);
        let p = rooted.parent[c];
        if p != 0 {
            for w in 0..width {
                let bits = subtree[c * width + w];
                subtree[p * width + w] |= bits;
            }
        }
    }
    let mut full = vec![0u64; width];
    for v in 1..=n {
        set_bit(&mut full, v);
    }

    let mut rows = vec![0u64; (n - 1) * 2 * width];
    let mut child_side = vec![0u64; width];
    let mut parent_side = vec![0u64; width];
    let mut queue = Vec::new();
    for (i, &c) in rooted.order.iter().skip(1).enumerate() {
        let p = rooted.parent[c];
        let below = &subtree[c * width..(c + 1) * width];
        if rooted.height[c] <= k {
            child_side.copy_from_slice(below);
        } else {
            bounded_side(tree, c, p, k, &mut child_side, &mut queue);
        }
        if rooted.reach_from_parent_side(p, c) <= k {
            for ((dst, f), b) in parent_side.iter_mut().zip(&full).zip(below) {
                *dst = f ^ b;
            }
        } else {
            bounded_side(tree, p, c, k, &mut parent_side, &mut queue);
        }
        let row = &mut rows[i * 2 * width..(i + 1) * 2 * width];
        let (first, second) = if lowest_label(&child_side) < lowest_label(&parent_side) {
            (&child_side, &parent_side)
        } else {
            (&parent_side, &child_side)
        };
        row[..width].copy_from_slice(first);
        row[width..].copy_from_slice(second);
    }

    let stride = 2 * width;
    let row = |i: usize| &rows[i * stride..(i + 1) * stride];
    let mut index: Vec<(u64, u64, usize)> = (0..n - 1)
        .map(|i| (rows[i * stride], rows[i * stride + 1], i))
        .collect();
    index.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then_with(|| row(a.2).cmp(row(b.2))));
    let mut sorted = Vec::with_capacity(rows.len());
    for (_, _, i) in index {
        sorted.extend_from_slice(row(i));
    }
    SplitSet {
        n,
        k,
        width,
        rows: sorted,
    }
}
