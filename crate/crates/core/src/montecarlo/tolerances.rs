//! Acceptance thresholds for the experiments. Every pass flag in an
//! [`ExperimentReport`](super::ExperimentReport) quotes the constant it used.

/// Asymptotic thresholds only apply from this `n` on.
pub const ASYMPTOTIC_MIN_N: usize = 100;
/// Sampling slack, in standard errors.
pub const MC_SIGMAS: f64 = 3.0;

pub const POISSON_TV_MAX: f64 = 0.02;
pub const POISSON_P_ZERO_TOL: f64 = 0.01;

pub const CLT_MEAN_REL_TOL: f64 = 0.02;
pub const CLT_VARIANCE_REL_TOL: f64 = 0.10;
pub const CLT_SKEWNESS_MAX: f64 = 0.1;
pub const CLT_EXCESS_KURTOSIS_MAX: f64 = 0.2;

/// `S_n ≠ U_n` may occur in at most this fraction of samples, from `n = 20`.
pub const N3_MISMATCH_MAX: f64 = 1e-3;
pub const N3_MISMATCH_MIN_N: usize = 20;

/// Calibrated from the summand bounds of the `O(1/n)` mean estimate at `n = 100`.
pub const ONE_RF_MEAN_MAX: f64 = 0.01;
pub const ONE_RF_DEGENERATE_MIN: f64 = 0.99;
/// `mean(n) / mean(2n)` must fall in this range; other size ratios scale it.
pub const ONE_RF_RATE_RANGE: (f64, f64) = (1.3, 3.0);

pub const FIXED_TREE_TV_MAX: f64 = 0.03;
