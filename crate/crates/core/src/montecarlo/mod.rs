//! Seeded Monte Carlo estimation of the limit laws.
//!
//! Trial `i` of a run with base seed `s` draws from its own ChaCha8 stream
//! (see [`trial_rng`]), and per-batch accumulators merge associatively, so
//! every result is bit-identical across worker counts.

mod engine;
pub mod experiments;
mod histogram;
mod report;
mod summary;
pub mod tolerances;

pub use engine::{simulate_statistic, trial_rng, Engine, Mergeable, BATCH_SIZE};
pub use experiments::{clt_full_rf, fixed_tree, n3rf, one_rf, one_rf_rate, poisson_zero_rf, Opponent, RunParams};
pub use histogram::{tv_distance, tv_sampling_error, DiscreteLaw, Histogram};
pub use report::{ExperimentReport, PassFlag};
pub use summary::{summary, SummaryStats};
