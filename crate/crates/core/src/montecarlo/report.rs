use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use super::histogram::Histogram;

/// One acceptance check, with the rule it applied.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PassFlag {
    pub name: String,
    pub passed: bool,
    pub observed: f64,
    /// The check, as `observed <op> bound` text with the constants filled in.
    pub rule: String,
}

/// The outcome of one experiment run.
///
/// Histograms are kept beside the report rather than inside its JSON.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub n: usize,
    pub k: Option<usize>,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    pub observed: BTreeMap<String, Value>,
    pub targets: BTreeMap<String, f64>,
    pub tv: BTreeMap<String, f64>,
    pub pass: Vec<PassFlag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    #[serde(skip)]
    pub histograms: BTreeMap<String, Histogram>,
}

impl ExperimentReport {
    pub(crate) fn new(experiment: &str, n: usize, k: Option<usize>, trials: u64, seed: u64, workers: usize) -> Self {
        ExperimentReport {
            experiment: experiment.to_string(),
            n,
            k,
            trials,
            seed,
            workers,
            observed: BTreeMap::new(),
            targets: BTreeMap::new(),
            tv: BTreeMap::new(),
            pass: Vec::new(),
            config: None,
            timestamp: None,
            histograms: BTreeMap::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.pass.iter().all(|f| f.passed)
    }

    pub fn flag(&self, name: &str) -> Option<&PassFlag> {
        self.pass.iter().find(|f| f.name == name)
    }

    /// The histogram written next to the report.
    pub fn primary_histogram(&self) -> Option<&Histogram> {
        self.histograms.get("primary")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub(crate) fn observe(&mut self, key: &str, value: impl Serialize) {
        self.observed.insert(
            key.to_string(),
            serde_json::to_value(value).expect("observations serialize"),
        );
    }

    pub(crate) fn target(&mut self, key: &str, value: f64) {
        self.targets.insert(key.to_string(), value);
    }

    pub(crate) fn check(&mut self, name: &str, passed: bool, observed: f64, rule: String) {
        self.pass.push(PassFlag {
            name: name.to_string(),
            passed,
            observed,
            rule,
        });
    }

    pub(crate) fn check_at_most(&mut self, name: &str, observed: f64, bound: f64) {
        self.check(name, observed <= bound, observed, format!("observed <= {bound}"));
    }

    pub(crate) fn check_below(&mut self, name: &str, observed: f64, bound: f64) {
        self.check(name, observed < bound, observed, format!("observed < {bound}"));
    }

    pub(crate) fn check_at_least(&mut self, name: &str, observed: f64, bound: f64) {
        self.check(name, observed >= bound, observed, format!("observed >= {bound}"));
    }

    pub(crate) fn check_abs_within(&mut self, name: &str, observed: f64, target: f64, tol: f64) {
        let passed = (observed - target).abs() <= tol;
        self.check(name, passed, observed, format!("|observed - {target}| <= {tol}"));
    }

    pub(crate) fn check_rel_within(&mut self, name: &str, observed: f64, target: f64, rel: f64) {
        let passed = (observed - target).abs() <= rel * target.abs();
        self.check(
            name,
            passed,
            observed,
            format!("|observed - {target}| <= {rel} * {}", target.abs()),
        );
    }

    pub(crate) fn check_zero_count(&mut self, name: &str, failures: u64) {
        self.check(name, failures == 0, failures as f64, "failures == 0".to_string());
    }
}
