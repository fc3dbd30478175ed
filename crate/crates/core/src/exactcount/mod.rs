//! Closed-form counts and reference laws, with brute-force oracles.
//!
//! Integral formulas are evaluated in arbitrary precision ([`BigUint`] /
//! [`BigRational`]); the `f64` variants work in log space so they stay finite
//! for large `n`. Every closed form has a counterpart in [`oracle`] that
//! enumerates trees directly.
//!
//! [`BigUint`]: num_bigint::BigUint
//! [`BigRational`]: num_rational::BigRational

mod forest;
mod formulas;
mod laws;
pub mod oracle;
mod shapes;

pub use forest::{count_trees_containing_forest, sample_forest, ForestComponent, ForestSpec};
pub use formulas::{
    asymptotic_shared_leaf_moments, count_ordered_forests, count_split_shapes, count_trees_with_type1_split,
    count_trees_with_type2_split, expected_shared_bipartitions_of_size, expected_shared_bipartitions_of_size_exact,
    factorial_moment_shared_leaves, factorial_moment_shared_leaves_exact, shared_edge_mean, singleton_split_formulas,
    stein_chen_bound, SingletonFormulas, SingletonRadius,
};
pub use laws::{
    hypergeometric_law, hypergeometric_pmf, hypergeometric_pmf_exact, poisson_law, poisson_law_auto, poisson_pmf,
    ReferencePmf, NORMALIZATION_TOLERANCE,
};
pub use oracle::{exact_statistic_law, exact_statistic_law_capped, ExactLaw, OracleCaps, ShapeCensus};
pub use shapes::{ShapeSizes, SplitShape};

use num_bigint::BigUint;
use num_traits::One;

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub(crate) fn big_pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

pub(crate) fn ln_binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    (1..=k).map(|i| ((n - k + i) as f64 / i as f64).ln()).sum()
}

pub(crate) fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}
