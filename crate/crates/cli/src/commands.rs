use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use cayleyrf::exactcount::oracle::{
    anchored_shape_count_by_enumeration, enumerate_split_shapes, shared_bipartitions_by_size,
    singleton_split_probability_exact, trees_containing_forest_by_enumeration,
};
use cayleyrf::exactcount::{
    count_ordered_forests, count_split_shapes, count_trees_containing_forest, count_trees_with_type1_split,
    count_trees_with_type2_split, exact_statistic_law_capped, expected_shared_bipartitions_of_size,
    expected_shared_bipartitions_of_size_exact, factorial_moment_shared_leaves, factorial_moment_shared_leaves_exact,
    singleton_split_formulas, stein_chen_bound, ExactLaw, ForestSpec, OracleCaps, ShapeSizes, SingletonRadius,
    SplitShape,
};
use cayleyrf::montecarlo::{self, trial_rng, ExperimentReport, Opponent, RunParams};
use cayleyrf::trees::parse_trees;
use cayleyrf::{prufer_encode, rf_distance, sample_tree, CayleyTree, Radius, Statistic};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::args::{
    Command, DistArgs, ExactArgs, ExactStat, ExperimentArgs, ExperimentName, Format, GenArgs, OpponentArg, RunConfig,
    SingletonArg,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cayleyrf::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

/// Runs one command; `Ok(false)` means an experiment had failing checks.
pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::Gen(args) => gen(&args).map(|_| true),
        Command::Dist(args) => dist(&args).map(|_| true),
        Command::Exact(args) => exact(&args).map(|_| true),
        Command::Experiment(args) => experiment(&args),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn gen(args: &GenArgs) -> Result<()> {
    let trees: Vec<CayleyTree> = (0..args.count)
        .map(|i| sample_tree(args.n, &mut trial_rng(args.seed, i)))
        .collect::<cayleyrf::Result<_>>()?;
    let text = match args.common.format.unwrap_or(Format::Text) {
        Format::Text => trees.iter().map(|t| format!("{t}\n")).collect::<String>(),
        Format::Json => {
            let records: Vec<Value> = trees
                .iter()
                .map(|t| json!({"n": t.n(), "edges": t.edges(), "prufer": prufer_encode(t).symbols()}))
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&records).expect("trees serialize"))
        }
        Format::Csv => return usage("gen writes text or json"),
    };
    emit(args.common.out.as_deref(), &text)
}

fn dist(args: &DistArgs) -> Result<()> {
    let first = parse_trees(&read(&args.first)?)?;
    let second = parse_trees(&read(&args.second)?)?;
    if first.is_empty() || first.len() != second.len() {
        return usage(format!(
            "files hold {} and {} trees; need the same nonzero number",
            first.len(),
            second.len()
        ));
    }
    let mut text = String::new();
    for (a, b) in first.iter().zip(&second) {
        text.push_str(&format!("{}\n", rf_distance(a, b, args.k)?));
    }
    emit(None, &text)
}

fn big(value: &BigUint) -> Value {
    value
        .to_u64()
        .map_or_else(|| Value::String(value.to_string()), Value::from)
}

fn rational(value: &BigRational) -> Value {
    json!({"exact": format!("{}/{}", value.numer(), value.denom()), "value": value.to_f64()})
}

fn need<T: Copy>(value: Option<T>, flag: &str, stat: ExactStat) -> Result<T> {
    value.ok_or_else(|| CliError::Usage(format!("--stat {stat:?} requires {flag}")))
}

fn law_csv(law: &ExactLaw) -> String {
    let mut text = String::from("value,numerator,denominator\n");
    for &v in law.counts.keys() {
        let p = law.probability(v);
        text.push_str(&format!("{v},{},{}\n", p.numer(), p.denom()));
    }
    text
}

fn exact(args: &ExactArgs) -> Result<()> {
    let n = args.n;
    let stat = args.stat;
    let mut caps = OracleCaps::default();
    if let Some(cap) = args.cap {
        caps = OracleCaps {
            pairs: cap,
            single: cap,
        };
    }
    let law_stat = match stat {
        ExactStat::SharedEdges => Some(Statistic::SharedSplits(Radius::Fixed(0))),
        ExactStat::SharedSplits => Some(Statistic::SharedSplits(Radius::Fixed(need(args.k, "--k", stat)?))),
        ExactStat::Distance => Some(Statistic::Distance(Radius::Fixed(need(args.k, "--k", stat)?))),
        ExactStat::SharedLeaves => Some(Statistic::SharedLeaves),
        ExactStat::LeafCount => Some(Statistic::LeafCount),
        _ => None,
    };
    let format = args.common.format.unwrap_or(Format::Json);
    if let Some(statistic) = law_stat {
        let law = exact_statistic_law_capped(n, statistic, caps)?;
        let text = match format {
            Format::Csv => law_csv(&law),
            Format::Json => {
                let mut value = law.to_json();
                value["mean_value"] = json!(law.mean_exact().to_f64());
                format!("{}\n", serde_json::to_string_pretty(&value).expect("laws serialize"))
            }
            Format::Text => return usage("exact laws are written as json or csv"),
        };
        return emit(args.common.out.as_deref(), &text);
    }
    if format != Format::Json {
        return usage("exact counts are written as json");
    }
    let single_ok = n <= caps.single;
    let mut value = json!({"statistic": stat, "n": n});
    match stat {
        ExactStat::Moon => {
            let text = args
                .forest
                .as_deref()
                .ok_or_else(|| CliError::Usage("--stat moon requires --forest".into()))?;
            let spec = ForestSpec::parse(n, text)?;
            value["forest"] = json!(spec.to_string());
            value["count"] = big(&count_trees_containing_forest(&spec));
            if single_ok {
                value["enumerated"] = json!(trees_containing_forest_by_enumeration(&spec, caps)?);
            }
        }
        ExactStat::Type1Count | ExactStat::Type2Count => {
            let k = need(args.k, "--k", stat)?;
            let (count, sizes) = if stat == ExactStat::Type1Count {
                (count_trees_with_type1_split(n, k)?, ShapeSizes::Type1 { k })
            } else {
                let l = need(args.l, "--l", stat)?;
                (count_trees_with_type2_split(n, l, k)?, ShapeSizes::Type2 { l, k })
            };
            let shape = SplitShape::canonical(sizes)?;
            value["k"] = json!(k);
            value["l"] = json!(args.l.filter(|_| stat == ExactStat::Type2Count));
            value["split"] = json!(shape.to_split().to_string());
            value["count"] = big(&count);
            if single_ok {
                value["enumerated"] = json!(anchored_shape_count_by_enumeration(n, &shape, caps)?);
            }
        }
        ExactStat::OrderedForests => {
            let s = need(args.k, "--k", stat)?;
            value["trees"] = json!(s);
            value["count"] = big(&count_ordered_forests(n, s)?);
            if single_ok {
                value["enumerated"] = json!(cayleyrf::exactcount::oracle::ordered_forests_by_enumeration(
                    n, s, caps
                )?);
            }
        }
        ExactStat::SplitShapes => {
            let k = need(args.k, "--k", stat)?;
            let sizes = match args.l {
                Some(l) => ShapeSizes::Type2 { l, k },
                None => ShapeSizes::Type1 { k },
            };
            value["k"] = json!(k);
            value["l"] = json!(args.l);
            value["closed_form"] = rational(&count_split_shapes(n, sizes)?);
            if n <= 12 {
                value["enumerated"] = json!(enumerate_split_shapes(n, sizes)?);
            }
        }
        ExactStat::FactorialMoment => {
            let k = need(args.k, "--k", stat)?;
            value["k"] = json!(k);
            value["value"] = json!(factorial_moment_shared_leaves(n, k)?);
            if n <= 64 {
                value["exact"] = rational(&factorial_moment_shared_leaves_exact(n, k)?)["exact"].clone();
            }
            if n <= caps.pairs {
                let law = exact_statistic_law_capped(n, Statistic::SharedLeaves, caps)?;
                value["enumerated"] = rational(&law.factorial_moment(k));
            }
        }
        ExactStat::Bipartitions => {
            let k = need(args.k, "--k", stat)?;
            value["k"] = json!(k);
            value["value"] = json!(expected_shared_bipartitions_of_size(n, k)?);
            if n <= 64 {
                value["exact"] = rational(&expected_shared_bipartitions_of_size_exact(n, k)?)["exact"].clone();
            }
            if n <= caps.pairs {
                if let Some(e) = shared_bipartitions_by_size(n, caps)?.get(&k) {
                    value["enumerated"] = rational(e);
                } else {
                    value["enumerated"] = json!({"exact": "0/1", "value": 0.0});
                }
            }
        }
        ExactStat::SteinChen => {
            value["lambda_n"] = json!(2.0 * (1.0 - 1.0 / n as f64));
            value["bound"] = json!(stein_chen_bound(n)?);
        }
        ExactStat::Singleton => {
            let radius = match args.radius {
                SingletonArg::Full => SingletonRadius::Full,
                SingletonArg::BelowFull => SingletonRadius::BelowFull,
            };
            value["radius"] = json!(args.radius);
            value["formulas"] = json!(singleton_split_formulas(n, radius)?);
            if n <= caps.pairs {
                value["enumerated"] = rational(&singleton_split_probability_exact(n, radius, 1, caps)?);
            }
        }
        _ => unreachable!("laws are handled above"),
    }
    emit(
        args.common.out.as_deref(),
        &format!("{}\n", serde_json::to_string_pretty(&value).expect("json")),
    )
}

fn histogram_path(out: &Path) -> PathBuf {
    let csv = out.with_extension("csv");
    if csv == out {
        out.with_extension("hist.csv")
    } else {
        csv
    }
}

fn experiment(args: &ExperimentArgs) -> Result<bool> {
    let params = RunParams {
        n: args.n,
        trials: args.trials,
        seed: args.seed,
        workers: args.workers,
    };
    let mut report: ExperimentReport = match args.name {
        ExperimentName::Poisson0rf => montecarlo::poisson_zero_rf(&params)?,
        ExperimentName::CltN2rf => montecarlo::clt_full_rf(&params)?,
        ExperimentName::N3rf => montecarlo::n3rf(&params)?,
        ExperimentName::OneRf => montecarlo::one_rf(&params)?,
        ExperimentName::OneRfRate => montecarlo::one_rf_rate(&args.sizes, args.trials, args.seed, args.workers)?,
        ExperimentName::FixedTree => {
            let tree = match &args.tree {
                Some(path) => parse_trees(&read(path)?)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| CliError::Usage(format!("{} holds no tree", path.display())))?,
                None => CayleyTree::star(args.n, 1)?,
            };
            let mode = match args.mode {
                OpponentArg::RandomTree => Opponent::RandomTree,
                OpponentArg::RandomPairSet => Opponent::RandomPairSet,
            };
            montecarlo::fixed_tree(&tree, mode, args.trials, args.seed, args.workers)?
        }
    };
    let config = RunConfig::for_experiment(args, report.k);
    report.config = Some(serde_json::to_value(config).expect("configs serialize"));
    if args.timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        report.timestamp = Some(format!("unix:{secs}"));
    }
    let csv = report.primary_histogram().map(|h| h.to_csv()).unwrap_or_default();
    let out = args.common.out.as_deref();
    match args.common.format.unwrap_or(Format::Json) {
        Format::Csv => emit(out, &csv)?,
        Format::Json => {
            emit(out, &format!("{}\n", report.to_json_pretty()))?;
            if let Some(path) = out {
                emit(Some(&histogram_path(path)), &csv)?;
            }
        }
        Format::Text => return usage("experiment reports are written as json or csv"),
    }
    for flag in report.pass.iter().filter(|f| !f.passed) {
        eprintln!(
            "cayleyrf: check {} failed: observed {} against {}",
            flag.name, flag.observed, flag.rule
        );
    }
    Ok(report.all_passed())
}
