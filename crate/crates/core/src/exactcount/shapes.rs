use crate::error::{input, Result};
use crate::splits::{Split, VertexSet};
use crate::trees::Vertex;

/// Side sizes of a 1-local split shape.
///
/// Type-1 shapes have a leaf `α` on one side and `β` with `k` further
/// neighbours on the other. Type-2 shapes give `α` its own `ℓ` neighbours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeSizes {
    Type1 { k: usize },
    Type2 { l: usize, k: usize },
}

impl ShapeSizes {
    /// Neighbours of `α` and of `β` apart from the anchor edge.
    pub fn arms(self) -> (usize, usize) {
        match self {
            ShapeSizes::Type1 { k } => (0, k),
            ShapeSizes::Type2 { l, k } => (l, k),
        }
    }

    pub(crate) fn validate(self) -> Result<()> {
        match self {
            ShapeSizes::Type1 { k } if k >= 1 => Ok(()),
            ShapeSizes::Type2 { l, k } if l >= 1 && k >= 1 => Ok(()),
            other => input(format!("{other:?}: arm sizes must be at least 1")),
        }
    }
}

/// A 1-local split shape with concrete anchor labels: the edge `α–β`, the
/// other neighbours `ys` of `α` and the other neighbours `xs` of `β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitShape {
    alpha: Vertex,
    beta: Vertex,
    ys: Vec<Vertex>,
    xs: Vec<Vertex>,
}

impl SplitShape {
    pub fn new(alpha: Vertex, beta: Vertex, mut ys: Vec<Vertex>, mut xs: Vec<Vertex>) -> Result<Self> {
        if xs.is_empty() {
            return input("β needs at least one further neighbour");
        }
        ys.sort_unstable();
        xs.sort_unstable();
        let mut all: Vec<Vertex> = [alpha, beta]
            .into_iter()
            .chain(ys.iter().copied())
            .chain(xs.iter().copied())
            .collect();
        all.sort_unstable();
        if all.contains(&0) || all.windows(2).any(|w| w[0] == w[1]) {
            return input("shape labels must be distinct and at least 1");
        }
        Ok(SplitShape { alpha, beta, ys, xs })
    }

    /// The shape with `α = 1`, `β = 2` and the arms on the next labels.
    pub fn canonical(sizes: ShapeSizes) -> Result<Self> {
        sizes.validate()?;
        let (l, k) = sizes.arms();
        Self::new(1, 2, (3..3 + l).collect(), (3 + l..3 + l + k).collect())
    }

    pub fn alpha(&self) -> Vertex {
        self.alpha
    }

    pub fn beta(&self) -> Vertex {
        self.beta
    }

    pub fn ys(&self) -> &[Vertex] {
        &self.ys
    }

    pub fn xs(&self) -> &[Vertex] {
        &self.xs
    }

    pub fn sizes(&self) -> ShapeSizes {
        if self.ys.is_empty() {
            ShapeSizes::Type1 { k: self.xs.len() }
        } else {
            ShapeSizes::Type2 {
                l: self.ys.len(),
                k: self.xs.len(),
            }
        }
    }

    /// Highest label used.
    pub fn max_label(&self) -> Vertex {
        [self.alpha, self.beta]
            .into_iter()
            .chain(self.ys.iter().copied())
            .chain(self.xs.iter().copied())
            .max()
            .unwrap()
    }

    /// The split `{α} ∪ ys | {β} ∪ xs`.
    pub fn to_split(&self) -> Split {
        let a: VertexSet = std::iter::once(self.alpha).chain(self.ys.iter().copied()).collect();
        let b: VertexSet = std::iter::once(self.beta).chain(self.xs.iter().copied()).collect();
        Split::new(a, b).expect("labels are distinct")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_shapes() {
        let t1 = SplitShape::canonical(ShapeSizes::Type1 { k: 2 }).unwrap();
        assert_eq!(t1.to_split().to_string(), "1|2,3,4");
        let t2 = SplitShape::canonical(ShapeSizes::Type2 { l: 2, k: 1 }).unwrap();
        assert_eq!(t2.to_split().to_string(), "1,3,4|2,5");
        assert_eq!(t2.sizes(), ShapeSizes::Type2 { l: 2, k: 1 });
        assert_eq!(t2.max_label(), 5);
        assert!(SplitShape::canonical(ShapeSizes::Type1 { k: 0 }).is_err());
        assert!(SplitShape::canonical(ShapeSizes::Type2 { l: 0, k: 1 }).is_err());
        assert!(SplitShape::new(1, 2, vec![], vec![2]).is_err());
    }
}
