use cayleyrf::exactcount::exact_statistic_law;
use cayleyrf::montecarlo::{simulate_statistic, summary, trial_rng, tv_distance, Engine};
use cayleyrf::{prufer_encode, sample_tree, Radius, Statistic};

const SEED: u64 = 7;

#[test]
fn sampler_is_uniform_on_five_labels() {
    let (n, per_cell) = (5usize, 400u64);
    let cells = n.pow(n as u32 - 2);
    let mut counts = vec![0u64; cells];
    let mut rng = trial_rng(SEED, 0);
    for _ in 0..per_cell * cells as u64 {
        let code = prufer_encode(&sample_tree(n, &mut rng).unwrap());
        let index = code.symbols().iter().fold(0, |acc, &s| acc * n + (s - 1));
        counts[index] += 1;
    }
    let expected = per_cell as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // df = 124, alpha = 1e-4
    assert!(chi2 < 191.276, "chi2={chi2}");
}

#[test]
fn simulated_laws_match_exact_small_n() {
    let engine = Engine::new(SEED, 2).unwrap();
    for n in 2..=5 {
        for stat in [
            Statistic::SharedSplits(Radius::Fixed(0)),
            Statistic::SharedSplits(Radius::Fixed(1)),
            Statistic::SharedSplits(Radius::FULL),
            Statistic::SharedLeaves,
            Statistic::LeafCount,
        ] {
            let exact = exact_statistic_law(n, stat).unwrap();
            let h = simulate_statistic(n, stat, 100_000, &engine).unwrap();
            let tv = tv_distance(&h, &exact).unwrap();
            assert!(tv < 0.01, "n={n} {stat:?} tv={tv}");
        }
    }
}

#[test]
fn shared_edges_at_four_labels() {
    let engine = Engine::new(SEED, 4).unwrap();
    let stat = Statistic::SharedSplits(Radius::Fixed(0));
    let h = simulate_statistic(4, stat, 1_000_000, &engine).unwrap();
    let s = summary(&h).unwrap();
    assert!(
        (s.mean - 1.5).abs() <= 3.0 * s.se_mean,
        "mean={} se={}",
        s.mean,
        s.se_mean
    );
    let tv = tv_distance(&h, &exact_statistic_law(4, stat).unwrap()).unwrap();
    assert!(tv < 0.005, "tv={tv}");
}

#[test]
fn worker_count_does_not_change_results() {
    let stat = Statistic::Distance(Radius::Fixed(2));
    let one = simulate_statistic(30, stat, 5_000, &Engine::new(SEED, 1).unwrap()).unwrap();
    let many = simulate_statistic(30, stat, 5_000, &Engine::new(SEED, 3).unwrap()).unwrap();
    assert_eq!(one.to_csv(), many.to_csv());
}
