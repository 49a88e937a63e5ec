//! Structured results of individual verification checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Outcome of one numeric check: the two sides being compared, the margin
/// (how far inside the inequality the result sits; negative means
/// violated), and the tolerance that decides pass/fail.
///
/// `details` uses an ordered map so serialized reports are byte-stable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub f_name: String,
    pub dim: usize,
    pub seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
}

impl CheckReport {
    /// `pass` is derived: margin >= -tolerance.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        check: impl Into<String>,
        f_name: impl Into<String>,
        dim: usize,
        seed: u64,
        lhs: f64,
        rhs: f64,
        margin: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            check: check.into(),
            f_name: f_name.into(),
            dim,
            seed,
            lhs,
            rhs,
            margin,
            tolerance,
            pass: margin >= -tolerance,
            details: BTreeMap::new(),
        }
    }

    pub fn with_detail(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.details.insert(key.into(), value.into());
        self
    }

    /// Force-fail a report regardless of margin (used when a precondition
    /// of the underlying theorem did not hold).
    pub fn failed(mut self) -> Self {
        self.pass = false;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Flat CSV row; `details` flattened as `k=v` pairs joined by '|'.
    pub fn to_csv_row(&self) -> String {
        let details = self
            .details
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join("|");
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.check,
            self.f_name,
            self.dim,
            self.seed,
            self.lhs,
            self.rhs,
            self.margin,
            self.tolerance,
            self.pass,
            details
        )
    }

    pub fn csv_header() -> &'static str {
        "check,f_name,dim,seed,lhs,rhs,margin,tolerance,pass,details"
    }
}

/// Relative slack convention used across inequality checks:
/// tol = base * max(1, scale).
pub fn relative_tolerance(base: f64, scale: f64) -> f64 {
    base * scale.abs().max(1.0)
}
