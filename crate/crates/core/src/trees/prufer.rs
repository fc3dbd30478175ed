use std::fmt;

use super::{CayleyTree, Vertex};
use crate::error::{input, parse_err, Error, Result};

/// A Prüfer code: `n − 2` symbols from `1..=n`, in bijection with the trees on `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PruferSequence {
    n: usize,
    symbols: Vec<usize>,
}

impl PruferSequence {
    pub fn new(n: usize, symbols: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("Prüfer codes need n >= 2, got n={n}")));
        }
        if symbols.len() != n - 2 {
            return input(format!(
                "Prüfer code for n={n} needs {} symbols, got {}",
                n - 2,
                symbols.len()
            ));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s == 0 || s > n) {
            return input(format!("Prüfer symbol {bad} outside 1..={n}"));
        }
        Ok(PruferSequence { n, symbols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    /// Parses the comma separated text form (`-` for the empty code).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        let symbols = if text == "-" {
            Vec::new()
        } else {
            let mut symbols = Vec::new();
            for item in text.split(',') {
                let item = item.trim();
                match item.parse::<usize>() {
                    Ok(v) => symbols.push(v),
                    Err(_) => return parse_err(1, format!("bad Prüfer symbol {item:?}")),
                }
                if symbols.len() > n {
                    return parse_err(1, format!("too many Prüfer symbols for n={n}"));
                }
            }
            symbols
        };
        Self::new(n, symbols)
    }
}

impl fmt::Display for PruferSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("-");
        }
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Decodes a Prüfer code into its tree.
pub fn prufer_decode(seq: &PruferSequence) -> CayleyTree {
    decode_unchecked(seq.n, &seq.symbols)
}

/// Linear-time decoding; `symbols` must already be a valid code for `n`.
pub(crate) fn decode_unchecked(n: usize, symbols: &[usize]) -> CayleyTree {
    debug_assert_eq!(symbols.len() + 2, n);
    let mut degree = vec![1usize; n + 1];
    for &s in symbols {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 1;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &v in symbols {
        edges.push((leaf.min(v), leaf.max(v)));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf.min(n), leaf.max(n)));
    edges.sort_unstable();
    CayleyTree::from_canonical(n, edges)
}

/// Encodes a tree as its Prüfer code (repeatedly strip the smallest leaf,
/// recording its neighbour).
pub fn prufer_encode(tree: &CayleyTree) -> PruferSequence {
    let n = tree.n();
    // Root at n: the last surviving vertex is always n.
    let mut parent = vec![0 as Vertex; n + 1];
    let mut stack = vec![n];
    let mut seen = vec![false; n + 1];
    seen[n] = true;
    while let Some(v) = stack.pop() {
        for &w in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut degree: Vec<usize> = (0..=n).map(|v| if v == 0 { 0 } else { tree.degree(v) }).collect();
    let mut symbols = Vec::with_capacity(n.saturating_sub(2));
    let mut ptr = 1;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for _ in 0..n.saturating_sub(2) {
        let next = parent[leaf];
        symbols.push(next);
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    PruferSequence { n, symbols }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(n: usize, s: &[usize]) -> PruferSequence {
        PruferSequence::new(n, s.to_vec()).unwrap()
    }

    #[test]
    fn decode_examples() {
        assert_eq!(prufer_decode(&code(2, &[])).edges(), &[(1, 2)]);
        assert_eq!(prufer_decode(&code(4, &[2, 2])).edges(), &[(1, 2), (2, 3), (2, 4)]);
        assert_eq!(prufer_decode(&code(4, &[2, 3])).edges(), &[(1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn encode_examples() {
        let edge = CayleyTree::new(2, [(1, 2)]).unwrap();
        assert!(prufer_encode(&edge).symbols().is_empty());
        assert_eq!(prufer_encode(&CayleyTree::star(4, 2).unwrap()).symbols(), &[2, 2]);
        assert_eq!(
            prufer_encode(&CayleyTree::path(&[1, 2, 3, 4]).unwrap()).symbols(),
            &[2, 3]
        );
    }

    #[test]
    fn validation() {
        assert!(matches!(PruferSequence::new(1, vec![]), Err(Error::Domain(_))));
        assert!(matches!(PruferSequence::new(4, vec![2]), Err(Error::Input(_))));
        assert!(matches!(PruferSequence::new(4, vec![2, 5]), Err(Error::Input(_))));
        assert!(matches!(PruferSequence::new(4, vec![0, 1]), Err(Error::Input(_))));
    }

    #[test]
    fn text_form() {
        assert_eq!(PruferSequence::parse("-", 2).unwrap(), code(2, &[]));
        assert_eq!(PruferSequence::parse("2, 3", 4).unwrap(), code(4, &[2, 3]));
        assert_eq!(code(5, &[1, 5, 5]).to_string(), "1,5,5");
        assert_eq!(code(2, &[]).to_string(), "-");
        assert!(matches!(PruferSequence::parse("2,x", 4), Err(Error::Parse { .. })));
        assert!(PruferSequence::parse("", 4).is_err());
        assert!(PruferSequence::parse("-", 4).is_err());
    }
}
