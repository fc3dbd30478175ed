use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::histogram::Histogram;
use crate::error::{input, Error, Result};
use crate::statistic::Statistic;
use crate::trees::sample_tree;

/// Partial results that combine associatively. Every accumulator in this
/// module is also commutative, so merge order does not affect results.
pub trait Mergeable: Send {
    fn merge(&mut self, other: Self);
}

impl<T: Mergeable> Mergeable for Vec<T> {
    fn merge(&mut self, other: Self) {
        assert_eq!(self.len(), other.len(), "merged accumulators must have equal shape");
        for (a, b) in self.iter_mut().zip(other) {
            a.merge(b);
        }
    }
}

impl Mergeable for u64 {
    fn merge(&mut self, other: Self) {
        *self += other;
    }
}

impl<A: Mergeable, B: Mergeable> Mergeable for (A, B) {
    fn merge(&mut self, other: Self) {
        self.0.merge(other.0);
        self.1.merge(other.1);
    }
}

/// Trials per work unit. Fixed so the partition does not depend on the
/// worker count.
pub const BATCH_SIZE: u64 = 1024;

/// The generator for trial `index` under `seed`: ChaCha8 keyed by
/// `seed_from_u64(seed)`, on stream `index`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Runs independent trials on a fixed-size thread pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Engine {
    seed: u64,
    workers: usize,
}

impl Engine {
    pub fn new(seed: u64, workers: usize) -> Result<Self> {
        if workers == 0 {
            return input("worker count must be at least 1");
        }
        Ok(Engine { seed, workers })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Runs `trials` trials. Trial `i` draws only from [`trial_rng`]`(seed, i)`
    /// and folds into an accumulator created by `init`; the batch
    /// accumulators are then merged in batch order.
    pub fn run<A, I, F>(&self, trials: u64, init: I, trial: F) -> Result<A>
    where
        A: Mergeable,
        I: Fn() -> A + Sync,
        F: Fn(&mut ChaCha8Rng, &mut A) -> Result<()> + Sync,
    {
        if trials == 0 {
            return input("at least one trial is required");
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Resource(format!("cannot start {} workers: {e}", self.workers)))?;
        let batches = trials.div_ceil(BATCH_SIZE);
        let seed = self.seed;
        let parts: Vec<A> = pool.install(|| {
            (0..batches)
                .into_par_iter()
                .map(|b| {
                    let mut acc = init();
                    for i in b * BATCH_SIZE..((b + 1) * BATCH_SIZE).min(trials) {
                        trial(&mut trial_rng(seed, i), &mut acc)?;
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<A>>>()
        })?;
        let mut parts = parts.into_iter();
        let mut total = parts.next().expect("at least one batch");
        for part in parts {
            total.merge(part);
        }
        Ok(total)
    }
}

/// Empirical law of `statistic` over `trials` independent uniform pairs
/// (or single trees) on `[n]`.
pub fn simulate_statistic(n: usize, statistic: Statistic, trials: u64, engine: &Engine) -> Result<Histogram> {
    if n < 2 {
        return Err(Error::Domain(format!("trees need at least 2 vertices, got n={n}")));
    }
    engine.run(trials, Histogram::new, |rng, hist| {
        let t1 = sample_tree(n, rng)?;
        let value = if statistic.is_pair() {
            let t2 = sample_tree(n, rng)?;
            statistic.evaluate(&t1, &t2)?
        } else {
            statistic.evaluate(&t1, &t1)?
        };
        hist.record(value);
        Ok(())
    })
}
