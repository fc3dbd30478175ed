use std::cmp::Ordering;
use std::fmt;

use crate::trees::Vertex;

/// A set of vertex labels stored as a bit vector (bit `v − 1` for label `v`).
///
/// Trailing zero words are trimmed, so equality and hashing are set equality
/// regardless of how wide the set was when it was built.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn from_words(words: &[u64]) -> Self {
        let used = words.iter().rposition(|&w| w != 0).map_or(0, |i| i + 1);
        VertexSet {
            words: words[..used].to_vec(),
        }
    }

    /// Writes the set into a fixed-width word buffer; `None` if it does not fit.
    pub(crate) fn write_words(&self, out: &mut [u64]) -> Option<()> {
        if self.words.len() > out.len() {
            return None;
        }
        out[..self.words.len()].copy_from_slice(&self.words);
        out[self.words.len()..].fill(0);
        Some(())
    }

    /// Inserts `v`; labels start at 1, so `v == 0` panics.
    pub fn insert(&mut self, v: Vertex) {
        assert!(v >= 1, "vertex labels start at 1");
        let (word, bit) = ((v - 1) / 64, (v - 1) % 64);
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        self.words[word] |= 1 << bit;
    }

    pub fn contains(&self, v: Vertex) -> bool {
        if v == 0 {
            return false;
        }
        let (word, bit) = ((v - 1) / 64, (v - 1) % 64);
        self.words.get(word).is_some_and(|w| w >> bit & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Smallest label in the set.
    pub fn min_label(&self) -> Option<Vertex> {
        lowest_label(&self.words)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Labels in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit + 1)
            })
        })
    }
}

pub(crate) fn lowest_label(words: &[u64]) -> Option<Vertex> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize + 1)
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut set = VertexSet::new();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

/// Orders sets by their ascending label lists, lexicographically.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_operations() {
        let s: VertexSet = [3, 1, 64, 65, 200].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 64, 65, 200]);
        assert_eq!(s.len(), 5);
        assert_eq!(s.min_label(), Some(1));
        assert!(s.contains(64) && s.contains(65) && !s.contains(66) && !s.contains(0) && !s.contains(1000));
        let t: VertexSet = [2, 66].into_iter().collect();
        assert!(s.is_disjoint(&t));
        assert!(VertexSet::new().is_empty());
    }

    #[test]
    fn equality_ignores_buffer_width() {
        let a = VertexSet::from_words(&[0b101, 0, 0, 0]);
        let b: VertexSet = [1, 3].into_iter().collect();
        assert_eq!(a, b);
        assert_eq!(VertexSet::from_words(&[0, 0]), VertexSet::new());
    }

    #[test]
    fn label_order() {
        let a: VertexSet = [1].into_iter().collect();
        let b: VertexSet = [1, 2].into_iter().collect();
        let c: VertexSet = [2].into_iter().collect();
        assert!(a < b && b < c);
    }
}
