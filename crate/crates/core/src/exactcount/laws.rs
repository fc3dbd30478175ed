use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::binomial;
use super::formulas::to_f64;
use crate::error::{input, Result};

/// Normalization tolerance for [`ReferencePmf`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// A probability law on the consecutive integers `offset..offset+len`.
///
/// Mass cut off by truncation is kept in `tail_mass` rather than being
/// spread over the support, so `Σ probabilities + tail_mass = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferencePmf {
    offset: i64,
    probabilities: Vec<f64>,
    tail_mass: f64,
}

impl ReferencePmf {
    pub fn new(offset: i64, probabilities: Vec<f64>, tail_mass: f64) -> Result<Self> {
        if probabilities.is_empty() {
            return input("reference law has empty support");
        }
        if probabilities
            .iter()
            .chain([&tail_mass])
            .any(|p| !p.is_finite() || *p < 0.0)
        {
            return input("reference law has a negative or non-finite probability");
        }
        let total: f64 = probabilities.iter().sum::<f64>() + tail_mass;
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return input(format!("reference law sums to {total}, not 1"));
        }
        Ok(ReferencePmf {
            offset,
            probabilities,
            tail_mass,
        })
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Largest value carrying explicit mass.
    pub fn max_value(&self) -> i64 {
        self.offset + self.probabilities.len() as i64 - 1
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn probability(&self, value: i64) -> f64 {
        if value < self.offset {
            return 0.0;
        }
        self.probabilities
            .get((value - self.offset) as usize)
            .copied()
            .unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probabilities
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.offset + i as i64, p))
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(v, p)| v as f64 * p).sum()
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return input(format!("Poisson mean must be positive and finite, got {lambda}"));
    }
    Ok(())
}

fn ln_poisson(lambda: f64, r: u64) -> f64 {
    -lambda + r as f64 * lambda.ln() - super::ln_factorial(r)
}

/// `e^−λ λ^r / r!`.
pub fn poisson_pmf(lambda: f64, r: i64) -> Result<f64> {
    check_lambda(lambda)?;
    if r < 0 {
        return input(format!("Poisson value must be nonnegative, got {r}"));
    }
    Ok(ln_poisson(lambda, r as u64).exp())
}

/// `Po(λ)` on `0..=cutoff`, with the remaining mass recorded as the tail.
pub fn poisson_law(lambda: f64, cutoff: usize) -> Result<ReferencePmf> {
    check_lambda(lambda)?;
    let mut probabilities = Vec::with_capacity(cutoff + 1);
    let mut p = (-lambda).exp();
    if p > 0.0 {
        for r in 0..=cutoff {
            if r > 0 {
                p *= lambda / r as f64;
            }
            probabilities.push(p);
        }
    } else {
        probabilities.extend((0..=cutoff as u64).map(|r| ln_poisson(lambda, r).exp()));
    }
    let total: f64 = probabilities.iter().sum();
    let tail = (1.0 - total).max(0.0);
    ReferencePmf::new(0, probabilities, tail)
}

/// `Po(λ)` truncated at `λ + 20√λ`.
pub fn poisson_law_auto(lambda: f64) -> Result<ReferencePmf> {
    check_lambda(lambda)?;
    let cutoff = (lambda + 20.0 * lambda.sqrt()).ceil().max(20.0) as usize;
    poisson_law(lambda, cutoff)
}

fn check_hypergeometric(r: u64, s: u64, t: u64) -> Result<()> {
    if t > r + s {
        return input(format!("hypergeometric draw size {t} exceeds population {}", r + s));
    }
    Ok(())
}

/// Exact `C(r,k) C(s,t−k) / C(r+s,t)`: the probability of `k` marked items
/// when drawing `t` from `r` marked and `s` unmarked without replacement.
pub fn hypergeometric_pmf_exact(r: u64, s: u64, t: u64, k: u64) -> Result<BigRational> {
    check_hypergeometric(r, s, t)?;
    if k > r.min(t) {
        return input(format!("hypergeometric value {k} exceeds min(r, t) = {}", r.min(t)));
    }
    let num = if t - k > s {
        Default::default()
    } else {
        binomial(r, k) * binomial(s, t - k)
    };
    Ok(BigRational::new(BigInt::from(num), BigInt::from(binomial(r + s, t))))
}

pub fn hypergeometric_pmf(r: u64, s: u64, t: u64, k: u64) -> Result<f64> {
    hypergeometric_pmf_exact(r, s, t, k).map(|p| to_f64(&p))
}

/// The whole hypergeometric law on `0..=min(r, t)`; there is no tail.
pub fn hypergeometric_law(r: u64, s: u64, t: u64) -> Result<ReferencePmf> {
    check_hypergeometric(r, s, t)?;
    let den = binomial(r + s, t);
    let probabilities: Vec<f64> = (0..=r.min(t))
        .map(|k| {
            if t - k > s {
                return 0.0;
            }
            let num = binomial(r, k) * binomial(s, t - k);
            to_f64(&BigRational::new(BigInt::from(num), BigInt::from(den.clone())))
        })
        .collect();
    let total: f64 = probabilities.iter().sum();
    ReferencePmf::new(0, probabilities, (1.0 - total).max(0.0))
}
