//! The limit-law experiments. Each one draws seeded samples through an
//! [`Engine`], checks per-sample identities inline and compares the
//! empirical laws with their reference targets.

use std::collections::HashSet;

use rand::seq::index;

use super::engine::{simulate_statistic, Engine};
use super::histogram::{tv_distance, tv_sampling_error, Histogram};
use super::report::ExperimentReport;
use super::summary::{summary, SummaryStats};
use super::tolerances::*;
use crate::error::{input, Error, Result};
use crate::exactcount::{asymptotic_shared_leaf_moments, hypergeometric_law, poisson_law_auto, stein_chen_bound};
use crate::splits::{shared_leaf_count, split_set};
use crate::statistic::{Radius, Statistic};
use crate::trees::{sample_tree, CayleyTree};

/// Size, sample count and seeding shared by all experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunParams {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl RunParams {
    fn engine(&self) -> Result<Engine> {
        Engine::new(self.seed, self.workers)
    }

    fn report(&self, name: &str, k: Option<usize>) -> ExperimentReport {
        ExperimentReport::new(name, self.n, k, self.trials, self.seed, self.workers)
    }

    fn need_n(&self, min: usize) -> Result<()> {
        if self.n < min {
            return Err(Error::Domain(format!(
                "this experiment needs n >= {min}, got n={}",
                self.n
            )));
        }
        Ok(())
    }
}

fn e2() -> f64 {
    (-2.0f64).exp()
}

/// Adds the raw and standardized moments of `h` and, if `apply`, the
/// mean/variance/skewness/kurtosis flags against `(mean, variance)`.
fn clt_battery(
    report: &mut ExperimentReport,
    label: &str,
    h: &Histogram,
    mean: f64,
    variance: f64,
    apply: bool,
) -> Result<SummaryStats> {
    let stats = summary(h)?;
    report.observe(label, stats);
    report.observe(
        &format!("{label}_standardized"),
        stats.standardized(mean, variance.sqrt()),
    );
    report.target(&format!("{label}_mean"), mean);
    report.target(&format!("{label}_variance"), variance);
    if apply {
        report.check_rel_within(&format!("{label}_mean"), stats.mean, mean, CLT_MEAN_REL_TOL);
        report.check_rel_within(
            &format!("{label}_variance"),
            stats.variance,
            variance,
            CLT_VARIANCE_REL_TOL,
        );
        let skew = stats.skewness.map_or(f64::NAN, f64::abs);
        report.check_below(&format!("{label}_abs_skewness"), skew, CLT_SKEWNESS_MAX);
        let kurt = stats.excess_kurtosis.map_or(f64::NAN, f64::abs);
        report.check_below(&format!("{label}_abs_excess_kurtosis"), kurt, CLT_EXCESS_KURTOSIS_MAX);
    }
    Ok(stats)
}

#[derive(Default)]
struct Tally {
    primary: Histogram,
    secondary: Histogram,
    events: u64,
    failures: u64,
}

impl super::engine::Mergeable for Tally {
    fn merge(&mut self, other: Self) {
        self.primary.merge(other.primary);
        self.secondary.merge(other.secondary);
        self.events += other.events;
        self.failures += other.failures;
    }
}

fn identity_holds(n: usize, distance: usize, shared: usize) -> bool {
    distance + 2 * shared == 2 * (n - 1)
}

/// Shared edges `S′_n` against `Po(2(1 − 1/n))`, `Po(2)` and the Stein–Chen bound.
///
/// Shared edges are counted by merging edge lists; the 0-RF distance is
/// counted separately from split sets and must equal `2(n−1) − 2S′_n`.
pub fn poisson_zero_rf(p: &RunParams) -> Result<ExperimentReport> {
    p.need_n(3)?;
    let n = p.n;
    let tally = p.engine()?.run(p.trials, Tally::default, |rng, t| {
        let (a, b) = (sample_tree(n, rng)?, sample_tree(n, rng)?);
        let shared = a.common_edges(&b)?;
        let distance = split_set(&a, 0).symmetric_difference_len(&split_set(&b, 0))?;
        t.failures += u64::from(!identity_holds(n, distance, shared));
        t.primary.record(shared as i64);
        t.secondary.record(distance as i64);
        Ok(())
    })?;
    let mut report = p.report("poisson-0rf", Some(0));
    let lambda = 2.0 * (1.0 - 1.0 / n as f64);
    let bound = stein_chen_bound(n)?;
    let tv_lambda = tv_distance(&tally.primary, &poisson_law_auto(lambda)?)?;
    let tv_two = tv_distance(&tally.primary, &poisson_law_auto(2.0)?)?;
    let mc = tv_sampling_error(&tally.primary);
    let p0 = tally.primary.frequency(0);
    report.observe("shared_edges", summary(&tally.primary)?);
    report.observe("p_zero", p0);
    report.observe("tv_sampling_error", mc);
    report.target("lambda_n", lambda);
    report.target("stein_chen_bound", bound);
    report.target("p_zero", e2());
    report.tv.insert("poisson_lambda_n".into(), tv_lambda);
    report.tv.insert("poisson_2".into(), tv_two);
    report.check_at_most("tv_within_stein_chen", tv_lambda, bound + MC_SIGMAS * mc);
    if n >= ASYMPTOTIC_MIN_N {
        report.check_below("tv_poisson_lambda_n", tv_lambda, POISSON_TV_MAX);
        report.check_abs_within("p_zero", p0, e2(), POISSON_P_ZERO_TOL);
    }
    report.check_zero_count("distance_identity", tally.failures);
    report.histograms.insert("primary".into(), tally.primary);
    report.histograms.insert("distance".into(), tally.secondary);
    Ok(report)
}

/// Shared full splits `S_n` and the full distance against the normal limit.
pub fn clt_full_rf(p: &RunParams) -> Result<ExperimentReport> {
    p.need_n(3)?;
    let n = p.n;
    let k = n - 2;
    let tally = p.engine()?.run(
        p.trials,
        || (Tally::default(), Histogram::new()),
        |rng, (t, leaves)| {
            let (a, b) = (sample_tree(n, rng)?, sample_tree(n, rng)?);
            let (sa, sb) = (split_set(&a, k), split_set(&b, k));
            let shared = sa.shared_with(&sb)?;
            let distance = sa.symmetric_difference_len(&sb)?;
            let shared_leaves = shared_leaf_count(&a, &b)?;
            let ok = identity_holds(n, distance, shared) && shared_leaves <= shared && shared < n;
            t.failures += u64::from(!ok);
            t.events += u64::from(shared != shared_leaves);
            t.primary.record(shared as i64);
            t.secondary.record(distance as i64);
            leaves.record(shared_leaves as i64);
            Ok(())
        },
    )?;
    let (t, leaves) = tally;
    let mut report = p.report("clt-n2rf", Some(k));
    let (mean, variance) = asymptotic_shared_leaf_moments(n)?;
    let apply = n >= ASYMPTOTIC_MIN_N;
    clt_battery(&mut report, "shared", &t.primary, mean, variance, apply)?;
    let nf = n as f64;
    clt_battery(
        &mut report,
        "distance",
        &t.secondary,
        2.0 * nf * (1.0 - e2()),
        4.0 * variance,
        apply,
    )?;
    report.observe("shared_leaves", summary(&leaves)?);
    report.observe("leaf_gap_fraction", t.events as f64 / p.trials as f64);
    report.check_zero_count("per_sample_identities", t.failures);
    report.histograms.insert("primary".into(), t.primary);
    report.histograms.insert("distance".into(), t.secondary);
    report.histograms.insert("shared_leaves".into(), leaves);
    Ok(report)
}

/// `U_n` (radius `n − 3`) beside `S_n` (radius `n − 2`).
pub fn n3rf(p: &RunParams) -> Result<ExperimentReport> {
    p.need_n(3)?;
    let n = p.n;
    let tally = p.engine()?.run(p.trials, Tally::default, |rng, t| {
        let (a, b) = (sample_tree(n, rng)?, sample_tree(n, rng)?);
        let full = split_set(&a, n - 2).shared_with(&split_set(&b, n - 2))?;
        let (ua, ub) = (split_set(&a, n - 3), split_set(&b, n - 3));
        let shared = ua.shared_with(&ub)?;
        let distance = ua.symmetric_difference_len(&ub)?;
        let gap = full.abs_diff(shared);
        t.failures += u64::from(!identity_holds(n, distance, shared) || gap > n);
        t.events += u64::from(gap != 0);
        t.primary.record(shared as i64);
        t.secondary.record(gap as i64);
        Ok(())
    })?;
    let mut report = p.report("n3rf", Some(n - 3));
    let (mean, variance) = asymptotic_shared_leaf_moments(n)?;
    clt_battery(
        &mut report,
        "shared",
        &tally.primary,
        mean,
        variance,
        n >= ASYMPTOTIC_MIN_N,
    )?;
    let mismatch = tally.events as f64 / p.trials as f64;
    report.observe("mismatch_fraction", mismatch);
    report.observe("mean_abs_difference", summary_mean(&tally.secondary));
    if n >= N3_MISMATCH_MIN_N {
        report.check_at_most("mismatch_fraction", mismatch, N3_MISMATCH_MAX);
    }
    report.check_zero_count("per_sample_identities", tally.failures);
    report.histograms.insert("primary".into(), tally.primary);
    report.histograms.insert("abs_difference".into(), tally.secondary);
    Ok(report)
}

fn summary_mean(h: &Histogram) -> f64 {
    h.iter().map(|(v, c)| v as f64 * c as f64).sum::<f64>() / h.trials() as f64
}

/// Shared 1-local splits `U′_n` and the degenerate 1-RF distance.
pub fn one_rf(p: &RunParams) -> Result<ExperimentReport> {
    p.need_n(3)?;
    let n = p.n;
    let tally = p.engine()?.run(p.trials, Tally::default, |rng, t| {
        let (a, b) = (sample_tree(n, rng)?, sample_tree(n, rng)?);
        let (sa, sb) = (split_set(&a, 1), split_set(&b, 1));
        let shared = sa.shared_with(&sb)?;
        let distance = sa.symmetric_difference_len(&sb)?;
        t.failures += u64::from(!identity_holds(n, distance, shared) || shared >= n);
        t.primary.record(shared as i64);
        t.secondary.record(distance as i64);
        Ok(())
    })?;
    let mut report = p.report("one-rf", Some(1));
    let maximal = 2 * (n as i64 - 1);
    let mean = summary_mean(&tally.primary);
    let degenerate = tally.secondary.frequency(maximal);
    report.observe("shared", summary(&tally.primary)?);
    report.observe("p_shared_zero", tally.primary.frequency(0));
    report.observe("p_distance_maximal", degenerate);
    report.target("distance_limit", maximal as f64);
    if n >= ASYMPTOTIC_MIN_N {
        report.check_at_most("mean_shared", mean, ONE_RF_MEAN_MAX);
        report.check_at_least("p_distance_maximal", degenerate, ONE_RF_DEGENERATE_MIN);
    }
    report.check_zero_count("per_sample_identities", tally.failures);
    report.histograms.insert("primary".into(), tally.primary);
    report.histograms.insert("distance".into(), tally.secondary);
    Ok(report)
}

/// Mean of `U′_n` over increasing sizes: successive means must decrease,
/// with `mean(n_i) / mean(n_{i+1})` inside [`ONE_RF_RATE_RANGE`] scaled by
/// `n_{i+1} / (2 n_i)`.
pub fn one_rf_rate(sizes: &[usize], trials: u64, seed: u64, workers: usize) -> Result<ExperimentReport> {
    if sizes.len() < 2 || sizes.windows(2).any(|w| w[0] >= w[1]) || sizes[0] < 3 {
        return input("rate check needs at least two increasing sizes, each at least 3");
    }
    let engine = Engine::new(seed, workers)?;
    let mut report = ExperimentReport::new("one-rf-rate", sizes[0], Some(1), trials, seed, workers);
    let mut means = Vec::new();
    for &n in sizes {
        let hist = simulate_statistic(n, Statistic::SharedSplits(Radius::Fixed(1)), trials, &engine)?;
        let mean = summary_mean(&hist);
        report.observe(&format!("mean_shared_n{n}"), mean);
        means.push(mean);
        report.histograms.insert(format!("n{n}"), hist);
    }
    report.observe("sizes", sizes);
    for (w, m) in sizes.windows(2).zip(means.windows(2)) {
        let ratio = m[0] / m[1];
        let scale = w[1] as f64 / (2.0 * w[0] as f64);
        let (lo, hi) = (ONE_RF_RATE_RANGE.0 * scale, ONE_RF_RATE_RANGE.1 * scale);
        let name = format!("ratio_n{}_n{}", w[0], w[1]);
        report.target(&name, w[1] as f64 / w[0] as f64);
        report.check(
            &name,
            ratio >= lo && ratio <= hi,
            ratio,
            format!("{lo} <= observed <= {hi}"),
        );
    }
    let first = report.histograms.get(&format!("n{}", sizes[0])).cloned();
    if let Some(h) = first {
        report.histograms.insert("primary".into(), h);
    }
    Ok(report)
}

/// Opponent model for [`fixed_tree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Opponent {
    /// A uniform random tree on `[n]`.
    RandomTree,
    /// `n − 1` distinct vertex pairs drawn uniformly without replacement.
    RandomPairSet,
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    (u - 1) * (2 * n - u) / 2 + (v - u - 1)
}

fn is_star(tree: &CayleyTree) -> bool {
    let n = tree.n();
    n >= 3 && (1..=n).any(|v| tree.degree(v) == n - 1)
}

/// Edges shared between a fixed tree and a random opponent.
pub fn fixed_tree(
    tree: &CayleyTree,
    opponent: Opponent,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport> {
    let n = tree.n();
    let engine = Engine::new(seed, workers)?;
    let pairs = n * (n - 1) / 2;
    let marked: HashSet<usize> = tree.edges().iter().map(|&(u, v)| pair_index(n, u, v)).collect();
    let hist = engine.run(trials, Histogram::new, |rng, h| {
        let overlap = match opponent {
            Opponent::RandomTree => tree.common_edges(&sample_tree(n, rng)?)?,
            Opponent::RandomPairSet => index::sample(rng, pairs, n - 1)
                .iter()
                .filter(|i| marked.contains(i))
                .count(),
        };
        h.record(overlap as i64);
        Ok(())
    })?;
    let name = match opponent {
        Opponent::RandomTree => "fixed-tree-random-tree",
        Opponent::RandomPairSet => "fixed-tree-random-pair-set",
    };
    let mut report = ExperimentReport::new(name, n, None, trials, seed, workers);
    report.observe("tree", tree.to_string());
    let p0 = hist.frequency(0);
    report.observe("p_zero", p0);
    report
        .tv
        .insert("poisson_2".into(), tv_distance(&hist, &poisson_law_auto(2.0)?)?);
    if trials >= 2 {
        report.observe("shared", summary(&hist)?);
    }
    match opponent {
        Opponent::RandomTree => {
            let target = 2.0 * (n as f64 - 1.0) / n as f64;
            report.target("mean", target);
            if trials >= 2 {
                let stats = summary(&hist)?;
                let slack = MC_SIGMAS * stats.se_mean.max(f64::EPSILON);
                report.check_abs_within("mean", stats.mean, target, slack);
            }
            if is_star(tree) {
                report.check(
                    "star_never_disjoint",
                    hist.count(0) == 0,
                    hist.count(0) as f64,
                    "count(0) == 0".into(),
                );
            }
        }
        Opponent::RandomPairSet => {
            let r = (n - 1) as u64;
            let law = hypergeometric_law(r, pairs as u64 - r, r)?;
            report.tv.insert("hypergeometric".into(), tv_distance(&hist, &law)?);
            let exact_p0 = law.probability(0);
            let se = (exact_p0 * (1.0 - exact_p0) / trials as f64).sqrt();
            report.target("p_zero", exact_p0);
            report.check_abs_within("p_zero_hypergeometric", p0, exact_p0, MC_SIGMAS * se);
            let max_z = law
                .iter()
                .filter(|&(_, q)| q > 0.0 && q < 1.0)
                .map(|(v, q)| (hist.frequency(v) - q).abs() / (q * (1.0 - q) / trials as f64).sqrt())
                .fold(0.0, f64::max);
            report.observe("max_abs_z_hypergeometric", max_z);
            if n >= ASYMPTOTIC_MIN_N {
                report.check_below("tv_poisson_2", report.tv["poisson_2"], FIXED_TREE_TV_MAX);
            }
        }
    }
    report.histograms.insert("primary".into(), hist);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, trials: u64) -> RunParams {
        RunParams {
            n,
            trials,
            seed: 11,
            workers: 2,
        }
    }

    #[test]
    fn pair_indices_are_a_bijection() {
        let n = 7;
        let mut seen: Vec<usize> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| pair_index(n, u, v)))
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..n * (n - 1) / 2).collect::<Vec<_>>());
    }

    #[test]
    fn small_runs_produce_flags() {
        let report = poisson_zero_rf(&params(12, 2000)).unwrap();
        assert!(report.flag("distance_identity").unwrap().passed);
        assert!(report.flag("tv_poisson_lambda_n").is_none());
        let report = clt_full_rf(&params(12, 500)).unwrap();
        assert!(report.flag("per_sample_identities").unwrap().passed);
        let report = n3rf(&params(20, 500)).unwrap();
        assert!(report.all_passed(), "{}", report.to_json_pretty());
        let report = one_rf(&params(12, 500)).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn star_opponent_always_overlaps() {
        let star = CayleyTree::star(9, 4).unwrap();
        let report = fixed_tree(&star, Opponent::RandomTree, 3000, 3, 1).unwrap();
        assert!(report.flag("star_never_disjoint").unwrap().passed);
        let report = fixed_tree(&star, Opponent::RandomPairSet, 3000, 3, 1).unwrap();
        assert_eq!(report.primary_histogram().unwrap().trials(), 3000);
    }

    #[test]
    fn rejects_tiny_inputs() {
        assert!(poisson_zero_rf(&params(2, 10)).is_err());
        assert!(one_rf_rate(&[10], 10, 0, 1).is_err());
        assert!(one_rf_rate(&[20, 10], 10, 0, 1).is_err());
    }
}
