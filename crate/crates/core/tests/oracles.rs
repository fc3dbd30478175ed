use cayleyrf::exactcount::oracle::shared_bipartitions_by_size;
use cayleyrf::exactcount::{
    exact_statistic_law, expected_shared_bipartitions_of_size_exact, poisson_law_auto, shared_edge_mean,
    stein_chen_bound, OracleCaps,
};
use cayleyrf::montecarlo::tv_distance;
use cayleyrf::{Radius, Statistic};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

#[test]
fn bipartition_sizes_sum_to_shared_full_splits() {
    for n in 2..=6 {
        let law = exact_statistic_law(n, Statistic::SharedSplits(Radius::FULL)).unwrap();
        let mut total = BigRational::zero();
        for size in 1..=n / 2 {
            let term = expected_shared_bipartitions_of_size_exact(n, size).unwrap();
            total += if 2 * size == n { term * half() } else { term };
        }
        assert_eq!(total, law.mean_exact(), "n={n}");
    }
}

#[test]
fn bipartition_sizes_match_enumeration() {
    for n in 2..=6 {
        let by_size = shared_bipartitions_by_size(n, OracleCaps::default()).unwrap();
        for (&size, value) in &by_size {
            let formula = expected_shared_bipartitions_of_size_exact(n, size).unwrap();
            let expected = if 2 * size == n { formula * half() } else { formula };
            assert_eq!(value, &expected, "n={n} size={size}");
        }
    }
}

#[test]
fn shared_edges_mean_matches_enumeration() {
    for n in 2..=6 {
        let law = exact_statistic_law(n, Statistic::SharedSplits(Radius::Fixed(0))).unwrap();
        assert_eq!(law.mean_exact(), shared_edge_mean(n).unwrap(), "n={n}");
    }
}

fn exact_poisson_tv(n: usize) -> f64 {
    let law = exact_statistic_law(n, Statistic::SharedSplits(Radius::Fixed(0))).unwrap();
    let lambda = 2.0 * (1.0 - 1.0 / n as f64);
    tv_distance(&law, &poisson_law_auto(lambda).unwrap()).unwrap()
}

#[test]
fn pinned_small_tv_to_poisson() {
    let tv = exact_poisson_tv(4);
    assert!((tv - 0.3049083296103717).abs() < 1e-12, "tv={tv}");
}

#[test]
fn stein_chen_bound_dominates_exact_tv() {
    let tv = exact_poisson_tv(6);
    let bound = stein_chen_bound(6).unwrap();
    assert!(bound >= tv, "bound={bound} tv={tv}");
}

#[test]
fn distance_law_mirrors_shared_law() {
    for n in 3..=5 {
        let shared = exact_statistic_law(n, Statistic::SharedSplits(Radius::Fixed(1))).unwrap();
        let dist = exact_statistic_law(n, Statistic::Distance(Radius::Fixed(1))).unwrap();
        assert_eq!(shared.total, dist.total);
        for (&s, &count) in &shared.counts {
            let d = 2 * (n as i64 - 1 - s);
            assert_eq!(dist.counts.get(&d), Some(&count), "n={n} s={s}");
        }
    }
}
