//! Verification reports: per-trial rows plus a summary, written as CSV and JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::numfmt::{format17, sig17, Sig17};

pub const CSV_HEADER: &str = "trial,dim,d_xy,d_yz,d_xz,slack,pass";

/// One row of a report. Triangle suites store the three pairwise distances;
/// other suites reuse the value columns as documented per suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub dim: usize,
    #[serde(serialize_with = "sig17")]
    pub d_xy: f64,
    #[serde(serialize_with = "sig17")]
    pub d_yz: f64,
    #[serde(serialize_with = "sig17")]
    pub d_xz: f64,
    #[serde(serialize_with = "sig17")]
    pub slack: f64,
    pub pass: bool,
    /// Evaluation error for this trial, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl TrialRecord {
    pub fn new(trial: usize, dim: usize, values: [f64; 3], slack: f64, pass: bool) -> Self {
        Self {
            trial,
            dim,
            d_xy: values[0],
            d_yz: values[1],
            d_xz: values[2],
            slack,
            pass,
            error: None,
        }
    }

    pub fn failed(trial: usize, dim: usize, error: String) -> Self {
        Self {
            error: Some(error),
            ..Self::new(trial, dim, [f64::NAN; 3], f64::NAN, false)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub suite: String,
    /// Divergence label, or a description of what the suite checks.
    pub spec: String,
    pub trials: usize,
    pub dims: Vec<usize>,
    pub seed: u64,
    #[serde(serialize_with = "sig17")]
    pub tolerance: f64,
    pub unit_trace: bool,
    pub violations: usize,
    pub errors: usize,
    #[serde(serialize_with = "sig17")]
    pub worst_slack: f64,
    /// Suite-specific aggregates (maximum errors, counts of flagged cases, ...).
    pub extras: BTreeMap<String, Sig17>,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

impl VerificationReport {
    /// Builds a report; `violations`, `errors` and `worst_slack` are derived from `records`.
    pub fn new(
        suite: impl Into<String>,
        spec: impl Into<String>,
        dims: Vec<usize>,
        seed: u64,
        tolerance: f64,
        records: Vec<TrialRecord>,
    ) -> Self {
        let violations = records
            .iter()
            .filter(|r| !r.pass && r.error.is_none())
            .count();
        let errors = records.iter().filter(|r| r.error.is_some()).count();
        let worst_slack = records
            .iter()
            .map(|r| r.slack)
            .filter(|s| !s.is_nan())
            .fold(f64::INFINITY, f64::min);
        Self {
            suite: suite.into(),
            spec: spec.into(),
            trials: records.len(),
            dims,
            seed,
            tolerance,
            unit_trace: false,
            violations,
            errors,
            worst_slack,
            extras: BTreeMap::new(),
            records,
        }
    }

    pub fn with_unit_trace(mut self, unit_trace: bool) -> Self {
        self.unit_trace = unit_trace;
        self
    }

    pub fn with_extra(mut self, key: &str, value: f64) -> Self {
        self.extras.insert(key.to_string(), Sig17(value));
        self
    }

    pub fn extra(&self, key: &str) -> Option<f64> {
        self.extras.get(key).map(|v| v.0)
    }

    /// No violations and no failed trials.
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.errors == 0
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.records.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.trial,
                r.dim,
                format17(r.d_xy),
                format17(r.d_yz),
                format17(r.d_xz),
                format17(r.slack),
                r.pass
            );
        }
        out
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes the CSV rows to `path` and the JSON summary next to it (see [`summary_path`]).
    pub fn write(&self, path: &Path) -> io::Result<(PathBuf, PathBuf)> {
        let (csv, json) = output_paths(path);
        std::fs::write(&csv, self.to_csv())?;
        std::fs::write(&json, self.summary_json() + "\n")?;
        Ok((csv, json))
    }
}

/// CSV and JSON summary paths for an output path: `out.csv` pairs with `out.json`;
/// an output path ending in `.json` is taken as the summary and the rows go to `.csv`.
pub fn output_paths(path: &Path) -> (PathBuf, PathBuf) {
    if path.extension().is_some_and(|e| e == "json") {
        (path.with_extension("csv"), path.to_path_buf())
    } else {
        (path.to_path_buf(), summary_path(path))
    }
}

pub fn summary_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        let rows = vec![
            TrialRecord::new(0, 2, [0.1, 0.2, 0.25], 0.05, true),
            TrialRecord::new(1, 3, [1.0, 1.0, 2.5], -0.5, false),
            TrialRecord::failed(2, 4, "boom".into()),
        ];
        VerificationReport::new("triangle", "sdiv", vec![2, 3, 4], 42, 1e-9, rows)
            .with_extra("maxRelError", 1e-7)
    }

    #[test]
    fn counts_and_worst_slack() {
        let r = sample();
        assert_eq!(r.trials, 3);
        assert_eq!(r.violations, 1);
        assert_eq!(r.errors, 1);
        assert_eq!(r.worst_slack, -0.5);
        assert!(!r.passed());
    }

    #[test]
    fn csv_round_trips() {
        let csv = sample().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 7);
        assert_eq!(row[2].parse::<f64>().unwrap(), 0.1);
        assert_eq!(row[6], "true");
        assert!(csv.lines().nth(3).unwrap().contains("NaN"));
    }

    #[test]
    fn summary_fields() {
        let v: serde_json::Value = serde_json::from_str(&sample().summary_json()).unwrap();
        for key in [
            "suite",
            "spec",
            "trials",
            "violations",
            "worstSlack",
            "seed",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["worstSlack"].as_f64(), Some(-0.5));
        assert_eq!(v["extras"]["maxRelError"].as_f64(), Some(1e-7));
    }

    #[test]
    fn output_path_pairing() {
        let (c, j) = output_paths(Path::new("out/report.csv"));
        assert_eq!(
            (c.to_str().unwrap(), j.to_str().unwrap()),
            ("out/report.csv", "out/report.json")
        );
        let (c, j) = output_paths(Path::new("r.json"));
        assert_eq!(
            (c.to_str().unwrap(), j.to_str().unwrap()),
            ("r.csv", "r.json")
        );
    }
}
