//! Line-oriented text form of a tree:
//!
//! ```text
//! n=4
//! edges=1-2,2-3,2-4
//! ```
//!
//! The writer emits canonical `u<v` pairs in lexicographic order. The reader
//! accepts any orientation and order, skips blank lines and `#` comments, and
//! reads any number of consecutive records.

use std::fmt;
use std::str::FromStr;

use super::CayleyTree;
use crate::error::{parse_err, Error, Result};

impl fmt::Display for CayleyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n())?;
        f.write_str("edges=")?;
        for (i, (u, v)) in self.edges().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

impl FromStr for CayleyTree {
    type Err = Error;

    /// Parses exactly one record.
    fn from_str(s: &str) -> Result<Self> {
        let mut trees = parse_trees(s)?;
        match trees.len() {
            1 => Ok(trees.pop().unwrap()),
            0 => parse_err(1, "no tree record found"),
            k => parse_err(1, format!("expected one tree record, found {k}")),
        }
    }
}

/// Parses every record in `text`.
pub fn parse_trees(text: &str) -> Result<Vec<CayleyTree>> {
    let mut trees = Vec::new();
    let mut pending: Option<(usize, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match pending.take() {
            None => {
                let Some(value) = line.strip_prefix("n=") else {
                    return parse_err(line_no, format!("expected `n=<int>`, got {line:?}"));
                };
                let n = parse_label(value.trim(), line_no)?;
                if n < 2 {
                    return parse_err(line_no, format!("n must be at least 2, got {n}"));
                }
                pending = Some((n, line_no));
            }
            Some((n, _)) => {
                let Some(list) = line.strip_prefix("edges=") else {
                    return parse_err(line_no, format!("expected `edges=...`, got {line:?}"));
                };
                let mut edges = Vec::new();
                for item in list.split(',') {
                    let item = item.trim();
                    let Some((u, v)) = item.split_once('-') else {
                        return parse_err(line_no, format!("expected `u-v`, got {item:?}"));
                    };
                    edges.push((parse_label(u.trim(), line_no)?, parse_label(v.trim(), line_no)?));
                    if edges.len() >= n {
                        return parse_err(line_no, format!("more than {} edges for n={n}", n - 1));
                    }
                }
                let tree = CayleyTree::new(n, edges).map_err(|e| Error::Parse {
                    line: line_no,
                    msg: e.to_string(),
                })?;
                trees.push(tree);
            }
        }
    }
    if let Some((_, line)) = pending {
        return parse_err(line, "`n=` line without a following `edges=` line");
    }
    Ok(trees)
}

fn parse_label(s: &str, line: usize) -> Result<usize> {
    s.parse::<usize>()
        .or_else(|_| parse_err(line, format!("bad integer {s:?}")))
}
