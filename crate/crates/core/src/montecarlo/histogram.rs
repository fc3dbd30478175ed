use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::engine::Mergeable;
use crate::error::{input, parse_err, Result};
use crate::exactcount::{ExactLaw, ReferencePmf};

/// Occurrence counts of integer values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    counts: BTreeMap<i64, u64>,
    trials: u64,
}

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, value: i64) {
        self.record_n(value, 1);
    }

    pub fn record_n(&mut self, value: i64, count: u64) {
        if count > 0 {
            *self.counts.entry(value).or_default() += count;
            self.trials += count;
        }
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn is_empty(&self) -> bool {
        self.trials == 0
    }

    pub fn counts(&self) -> &BTreeMap<i64, u64> {
        &self.counts
    }

    pub fn count(&self, value: i64) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn frequency(&self, value: i64) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        self.count(value) as f64 / self.trials as f64
    }

    pub fn min(&self) -> Option<i64> {
        self.counts.keys().next().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.counts.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    /// The law of `a + b·X`.
    pub fn map_affine(&self, a: i64, b: i64) -> Histogram {
        let mut out = Histogram::new();
        for (v, c) in self.iter() {
            out.record_n(a + b * v, c);
        }
        out
    }

    /// `value,count` lines in ascending value order, with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,count\n");
        for (v, c) in self.iter() {
            let _ = writeln!(out, "{v},{c}");
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Histogram> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "value,count")) => {}
            Some((line, other)) => return parse_err(line, format!("expected header `value,count`, found `{other}`")),
            None => return parse_err(1, "missing header `value,count`"),
        }
        let mut hist = Histogram::new();
        let mut last: Option<i64> = None;
        for (line, text) in lines {
            let Some((v, c)) = text.split_once(',') else {
                return parse_err(line, format!("expected `value,count`, found `{text}`"));
            };
            let v: i64 = v
                .trim()
                .parse()
                .or_else(|e| parse_err(line, format!("bad value `{v}`: {e}")))?;
            let c: u64 = c
                .trim()
                .parse()
                .or_else(|e| parse_err(line, format!("bad count `{c}`: {e}")))?;
            if last.is_some_and(|prev| prev >= v) {
                return parse_err(line, format!("values must be strictly ascending at {v}"));
            }
            if hist.trials.checked_add(c).is_none() {
                return parse_err(line, "total count overflows");
            }
            last = Some(v);
            hist.record_n(v, c);
        }
        Ok(hist)
    }
}

impl Mergeable for Histogram {
    fn merge(&mut self, other: Self) {
        for (v, c) in other.counts {
            self.record_n(v, c);
        }
    }
}

impl FromIterator<i64> for Histogram {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        let mut hist = Histogram::new();
        for v in iter {
            hist.record(v);
        }
        hist
    }
}

/// A probability law on the integers, empirical or exact.
pub trait DiscreteLaw {
    /// Values with positive mass, ascending.
    fn support(&self) -> Vec<i64>;
    fn mass(&self, value: i64) -> f64;
    /// Mass not attached to any listed value (truncated tails).
    fn unassigned_mass(&self) -> f64 {
        0.0
    }
    fn is_empty(&self) -> bool;
}

impl DiscreteLaw for Histogram {
    fn support(&self) -> Vec<i64> {
        self.counts.keys().copied().collect()
    }

    fn mass(&self, value: i64) -> f64 {
        self.frequency(value)
    }

    fn is_empty(&self) -> bool {
        self.trials == 0
    }
}

impl DiscreteLaw for ReferencePmf {
    fn support(&self) -> Vec<i64> {
        self.iter().filter(|&(_, p)| p > 0.0).map(|(v, _)| v).collect()
    }

    fn mass(&self, value: i64) -> f64 {
        self.probability(value)
    }

    fn unassigned_mass(&self) -> f64 {
        self.tail_mass()
    }

    fn is_empty(&self) -> bool {
        false
    }
}

impl DiscreteLaw for ExactLaw {
    fn support(&self) -> Vec<i64> {
        self.counts.keys().copied().collect()
    }

    fn mass(&self, value: i64) -> f64 {
        self.probability_f64(value)
    }

    fn is_empty(&self) -> bool {
        self.total == 0
    }
}

/// `½ Σ_v |p(v) − q(v)|` over the union of supports.
///
/// Truncated tail mass of either law is added as if it sat where the other
/// law has none, so for truncated reference laws the value is an upper bound
/// that is off by at most the tail mass.
pub fn tv_distance(p: &dyn DiscreteLaw, q: &dyn DiscreteLaw) -> Result<f64> {
    if p.is_empty() || q.is_empty() {
        return input("total variation needs two nonempty laws");
    }
    let mut support = p.support();
    support.extend(q.support());
    support.sort_unstable();
    support.dedup();
    let sum: f64 = support.iter().map(|&v| (p.mass(v) - q.mass(v)).abs()).sum();
    Ok((0.5 * (sum + p.unassigned_mass() + q.unassigned_mass())).min(1.0))
}

/// Rough standard error of an empirical TV distance: `½ Σ_v √(p_v(1−p_v)/N)`.
pub fn tv_sampling_error(h: &Histogram) -> f64 {
    let n = h.trials() as f64;
    0.5 * h
        .iter()
        .map(|(v, _)| {
            let p = h.frequency(v);
            (p * (1.0 - p) / n).sqrt()
        })
        .sum::<f64>()
}
