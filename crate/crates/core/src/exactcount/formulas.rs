use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::shapes::ShapeSizes;
use super::{big_pow, binomial, ln_binomial, ln_factorial};
use crate::error::{input, Error, Result};

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn need_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::Domain(format!("requires n >= {min}, got n={n}")));
    }
    Ok(())
}

/// Mean number of edges shared by two independent uniform trees: `2(n − 1)/n`.
pub fn shared_edge_mean(n: usize) -> Result<BigRational> {
    need_n(n, 2)?;
    Ok(BigRational::new(BigInt::from(2 * (n - 1)), BigInt::from(n)))
}

/// `E[S̃(S̃−1)⋯(S̃−k+1)] = k! C(n,k) (1 − k/n)^(2n−4)` for the shared-leaf count, exactly.
pub fn factorial_moment_shared_leaves_exact(n: usize, k: usize) -> Result<BigRational> {
    need_n(n, 2)?;
    if k > n {
        return input(format!("factorial moment order {k} exceeds n={n}"));
    }
    let (n64, k64) = (n as u64, k as u64);
    let falling: BigUint = (0..k64).fold(BigUint::one(), |acc, i| acc * (n64 - i));
    let exp = 2 * n64 - 4;
    Ok(ratio(falling * big_pow(n64 - k64, exp), big_pow(n64, exp)))
}

/// Floating-point form of [`factorial_moment_shared_leaves_exact`], valid for large `n`.
pub fn factorial_moment_shared_leaves(n: usize, k: usize) -> Result<f64> {
    need_n(n, 2)?;
    if k > n {
        return input(format!("factorial moment order {k} exceeds n={n}"));
    }
    let exp = (2 * n - 4) as f64;
    if k == n {
        return Ok(if n == 2 { 2.0 } else { 0.0 });
    }
    let ln_falling: f64 = (0..k).map(|i| ((n - i) as f64).ln()).sum();
    Ok((ln_falling + exp * (1.0 - k as f64 / n as f64).ln()).exp())
}

/// Leading-order mean and variance of the shared-leaf count:
/// `(n e^−2, n (e^−2 − 3 e^−4))`.
pub fn asymptotic_shared_leaf_moments(n: usize) -> Result<(f64, f64)> {
    need_n(n, 2)?;
    let (e2, e4) = ((-2.0f64).exp(), (-4.0f64).exp());
    Ok((n as f64 * e2, n as f64 * (e2 - 3.0 * e4)))
}

fn check_bipartition_size(n: usize, k: usize) -> Result<()> {
    need_n(n, 2)?;
    if k < 1 || 2 * k > n {
        return input(format!("side size {k} outside 1..=n/2 for n={n}"));
    }
    Ok(())
}

/// `C(n,k) (k^(k−1) (n−k)^(n−k−1) / n^(n−2))²`, exactly.
///
/// When `k = n/2` the binomial counts each bipartition twice, so the expected
/// number of shared `k | k` splits is half this value.
pub fn expected_shared_bipartitions_of_size_exact(n: usize, k: usize) -> Result<BigRational> {
    check_bipartition_size(n, k)?;
    let (n64, k64) = (n as u64, k as u64);
    let per_tree = big_pow(k64, k64 - 1) * big_pow(n64 - k64, n64 - k64 - 1);
    let den = big_pow(n64, n64 - 2);
    Ok(ratio(binomial(n64, k64) * &per_tree * &per_tree, &den * &den))
}

/// Log-space form of [`expected_shared_bipartitions_of_size_exact`].
pub fn expected_shared_bipartitions_of_size(n: usize, k: usize) -> Result<f64> {
    check_bipartition_size(n, k)?;
    let (nf, kf) = (n as f64, k as f64);
    let ln_tree = (kf - 1.0) * kf.ln() + (nf - kf - 1.0) * (nf - kf).ln() - (nf - 2.0) * nf.ln();
    Ok((ln_binomial(n as u64, k as u64) + 2.0 * ln_tree).exp())
}

/// Ordered forests of `s` trees on `n` vertices, each tree holding one copy
/// of label 1 and the other `n − s` labels distinct: `s · n^(n−s−1)`.
pub fn count_ordered_forests(n: usize, s: usize) -> Result<BigUint> {
    if s < 1 || s > n {
        return input(format!("forest count needs 1 <= s <= n, got s={s}, n={n}"));
    }
    let (n64, s64) = (n as u64, s as u64);
    Ok(if s == n {
        BigUint::one()
    } else {
        BigUint::from(s64) * big_pow(n64, n64 - s64 - 1)
    })
}

/// Trees containing a fixed anchored type-1 split with `|B| = k + 1`: `k (n−2)^(n−k−3)`.
pub fn count_trees_with_type1_split(n: usize, k: usize) -> Result<BigUint> {
    if k < 1 || n < k + 3 {
        return input(format!("type-1 count needs k >= 1 and n >= k+3, got n={n}, k={k}"));
    }
    Ok(BigUint::from(k as u64) * big_pow(n as u64 - 2, (n - k - 3) as u64))
}

/// Trees containing a fixed anchored type-2 split with `|A| = ℓ + 1`,
/// `|B| = k + 1`: `(ℓ + k)(n−2)^(n−ℓ−k−3)`.
pub fn count_trees_with_type2_split(n: usize, l: usize, k: usize) -> Result<BigUint> {
    if l < 1 || k < 1 || n < l + k + 3 {
        return input(format!(
            "type-2 count needs l, k >= 1 and n >= l+k+3, got n={n}, l={l}, k={k}"
        ));
    }
    Ok(BigUint::from((l + k) as u64) * big_pow(n as u64 - 2, (n - l - k - 3) as u64))
}

/// Number of 1-local split shapes of the given sizes, by the closed forms
/// `N₁(k) = n(n−1) C(n−2,k)` and `N₂(ℓ,k) = ½ C(n,2) C(n−2,ℓ) C(n−2−ℓ,k)`.
///
/// `N₂` is returned as a rational because the halved product need not be an
/// integer. See [`super::oracle::enumerate_split_shapes`] for the count of
/// distinct labeled instances.
pub fn count_split_shapes(n: usize, sizes: ShapeSizes) -> Result<BigRational> {
    sizes.validate()?;
    let (l, k) = sizes.arms();
    if n < l + k + 2 {
        return input(format!("{sizes:?} needs {} labels, n={n}", l + k + 2));
    }
    let n64 = n as u64;
    Ok(match sizes {
        ShapeSizes::Type1 { k } => {
            BigRational::from_integer(BigInt::from(n64 * (n64 - 1) * binomial(n64 - 2, k as u64)))
        }
        ShapeSizes::Type2 { l, k } => {
            let prod = binomial(n64, 2) * binomial(n64 - 2, l as u64) * binomial(n64 - 2 - l as u64, k as u64);
            ratio(prod, BigUint::from(2u32))
        }
    })
}

/// Explicit total-variation bound between the shared-edge count and
/// `Po(λ_n)`, `λ_n = 2(1 − 1/n)`:
///
/// `min(1, 1/λ_n) · C(n,2) · [p² + (2n−3)(p² + q)]`, `p = (2/n)²`, `q = (3/n²)²`.
pub fn stein_chen_bound(n: usize) -> Result<f64> {
    need_n(n, 3)?;
    let nf = n as f64;
    let lambda = 2.0 * (1.0 - 1.0 / nf);
    let p = (2.0 / nf).powi(2);
    let q = (3.0 / (nf * nf)).powi(2);
    let pairs = nf * (nf - 1.0) / 2.0;
    Ok((1.0f64).min(1.0 / lambda) * pairs * (p * p + (2.0 * nf - 3.0) * (p * p + q)))
}

/// Radius at which a singleton split `{x} | [n]∖{x}` is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingletonRadius {
    /// `n − 2`: the split is present iff `x` is a leaf.
    Full,
    /// `n − 3`: additionally the tree must not be a path ending at `x`.
    BelowFull,
}

impl SingletonRadius {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            SingletonRadius::Full => n - 2,
            SingletonRadius::BelowFull => n - 3,
        }
    }
}

/// The two candidate closed forms for the probability that two independent
/// trees both contain `{x} | [n]∖{x}`, reported side by side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingletonFormulas {
    /// `4/n²` at radius `n − 2`; `(2/n − n!/n^(n−1))²` at radius `n − 3`.
    pub published: f64,
    /// `(1 − 1/n)^(2n−4)` at radius `n − 2`;
    /// `((1 − 1/n)^(n−2) − (n−1)!/n^(n−2))²` at radius `n − 3`.
    pub leaf_based: f64,
}

pub fn singleton_split_formulas(n: usize, radius: SingletonRadius) -> Result<SingletonFormulas> {
    need_n(n, 3)?;
    let nf = n as f64;
    let leaf = (1.0 - 1.0 / nf).powf(nf - 2.0);
    // (n−1)!/n^(n−2) = n!/n^(n−1): probability of a path with x at one end.
    let path_end = (ln_factorial(n as u64 - 1) - (nf - 2.0) * nf.ln()).exp();
    Ok(match radius {
        SingletonRadius::Full => SingletonFormulas {
            published: 4.0 / (nf * nf),
            leaf_based: leaf * leaf,
        },
        SingletonRadius::BelowFull => SingletonFormulas {
            published: (2.0 / nf - path_end).powi(2),
            leaf_based: (leaf - path_end).powi(2),
        },
    })
}

pub(crate) fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[allow(dead_code)]
pub(crate) fn is_integer(r: &BigRational) -> bool {
    (r.numer() % r.denom()).is_zero()
}
