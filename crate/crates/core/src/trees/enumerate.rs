use super::prufer::decode_unchecked;
use super::{CayleyTree, PruferSequence};
use crate::error::{Error, Result};

/// Largest `n` enumerated unless a caller overrides it (`9^7` ≈ 4.8M trees).
pub const DEFAULT_ENUMERATION_CAP: usize = 9;

/// Every Prüfer code for `n`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct PruferCodes {
    n: usize,
    current: Vec<usize>,
    remaining: u64,
}

impl PruferCodes {
    fn new(n: usize) -> Self {
        let len = n - 2;
        PruferCodes {
            n,
            current: vec![1; len],
            remaining: (n as u64).pow(len as u32),
        }
    }

    fn advance(&mut self) {
        for slot in self.current.iter_mut().rev() {
            if *slot < self.n {
                *slot += 1;
                return;
            }
            *slot = 1;
        }
    }

    fn next_symbols(&mut self) -> Option<&[usize]> {
        if self.remaining == 0 {
            return None;
        }
        // Advance lazily so the slice handed out stays valid until the next call.
        if self.remaining != self.total() {
            self.advance();
        }
        self.remaining -= 1;
        Some(&self.current)
    }

    fn total(&self) -> u64 {
        (self.n as u64).pow(self.current.len() as u32)
    }
}

impl Iterator for PruferCodes {
    type Item = PruferSequence;

    fn next(&mut self) -> Option<PruferSequence> {
        let n = self.n;
        self.next_symbols()
            .map(|s| PruferSequence::new(n, s.to_vec()).expect("odometer yields valid codes"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

impl ExactSizeIterator for PruferCodes {}

/// Streams every tree on `[n]` exactly once.
#[derive(Clone, Debug)]
pub struct TreeEnumerator {
    codes: PruferCodes,
}

impl Iterator for TreeEnumerator {
    type Item = CayleyTree;

    fn next(&mut self) -> Option<CayleyTree> {
        let n = self.codes.n;
        self.codes.next_symbols().map(|s| decode_unchecked(n, s))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.codes.size_hint()
    }
}

impl ExactSizeIterator for TreeEnumerator {}

impl TreeEnumerator {
    /// The underlying Prüfer codes, in the same order the trees are produced.
    pub fn codes(n: usize, cap: usize) -> Result<PruferCodes> {
        check(n, cap)?;
        Ok(PruferCodes::new(n))
    }
}

fn check(n: usize, cap: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("trees need at least 2 vertices, got n={n}")));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "tree enumeration",
            n,
            cap,
        });
    }
    if (n as u64).checked_pow((n - 2) as u32).is_none() {
        return Err(Error::Resource(format!("n^(n-2) overflows a 64-bit counter at n={n}")));
    }
    Ok(())
}

/// All `n^(n-2)` trees on `[n]`, for `n` up to [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_trees(n: usize) -> Result<TreeEnumerator> {
    enumerate_trees_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_trees_capped(n: usize, cap: usize) -> Result<TreeEnumerator> {
    check(n, cap)?;
    Ok(TreeEnumerator {
        codes: PruferCodes::new(n),
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn counts_for_small_n() {
        for (n, expected) in [(2, 1), (3, 3), (4, 16), (6, 1296)] {
            let trees: HashSet<_> = enumerate_trees(n).unwrap().collect();
            assert_eq!(trees.len(), expected, "n={n}");
        }
    }

    #[test]
    fn codes_are_lexicographic() {
        let codes: Vec<_> = TreeEnumerator::codes(4, 9)
            .unwrap()
            .map(|c| c.symbols().to_vec())
            .collect();
        assert_eq!(codes.len(), 16);
        assert_eq!(codes[0], vec![1, 1]);
        assert_eq!(codes[1], vec![1, 2]);
        assert_eq!(codes[15], vec![4, 4]);
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_trees(10), Err(Error::CapExceeded { cap: 9, .. })));
        assert!(enumerate_trees_capped(10, 10).is_ok());
        assert!(matches!(enumerate_trees(1), Err(Error::Domain(_))));
        assert_eq!(enumerate_trees(7).unwrap().len(), 16807);
    }
}
