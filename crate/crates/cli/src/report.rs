//! Report model shared by every suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Tag for checks that exercise tooling rather than a geometric relation.
pub const PLUMBING: &str = "plumbing";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Exploratory finding; never affects the exit status.
    Measured,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Measured => "measured",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub check_id: String,
    pub paper_eq: String,
    pub status: Status,
    /// `"0"` for an exact zero, otherwise a decimal or normal-form rendering.
    pub residual: String,
    pub details: Value,
}

impl Check {
    pub fn new(id: impl Into<String>, tag: &str, status: Status, residual: impl Into<String>, details: Value) -> Self {
        Self { check_id: id.into(), paper_eq: tag.to_string(), status, residual: residual.into(), details }
    }

    /// Pass when `value < tol`.
    pub fn below(id: impl Into<String>, tag: &str, value: f64, tol: f64, details: Value) -> Self {
        Self::new(id, tag, Status::from_bool(value < tol), fmt_residual(value), details)
    }

    pub fn measured(id: impl Into<String>, tag: &str, residual: impl Into<String>, details: Value) -> Self {
        Self::new(id, tag, Status::Measured, residual, details)
    }
}

pub fn fmt_residual(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:.6e}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub convention: String,
    pub seed: u64,
    pub versions: BTreeMap<String, String>,
    pub timestamp: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn has_failures(&self) -> bool {
        self.failures().next().is_some()
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Suite `{}`\n", self.suite);
        let _ = writeln!(s, "- schema: {}", self.schema_version);
        let _ = writeln!(s, "- convention: `{}`", self.convention);
        let _ = writeln!(s, "- seed: {}", self.seed);
        for (k, v) in &self.versions {
            let _ = writeln!(s, "- {k}: {v}");
        }
        let _ = writeln!(s, "- timestamp: {}", self.timestamp);
        let _ = writeln!(
            s,
            "- pass {} / fail {} / measured {}\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Measured)
        );
        s.push_str("| check | relation | status | residual |\n|---|---|---|---|\n");
        for c in &self.checks {
            let _ = writeln!(s, "| {} | {} | {} | `{}` |", c.check_id, c.paper_eq, c.status.as_str(), c.residual.replace('|', "\\|"));
        }
        s
    }
}
