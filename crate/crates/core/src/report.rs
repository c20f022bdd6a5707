//! Structured pass/fail reports for identity suites and pipeline stages.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    /// Witness description; empty when the check passed. Tuples that could
    /// not be evaluated inside the declared truncation window are counted in
    /// `skipped`, never as passes.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub witness: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub skipped: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl CheckResult {
    pub fn new(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        CheckResult { name: name.into(), pass, witness: witness.into(), skipped: 0 }
    }

    pub fn with_skipped(mut self, skipped: usize) -> Self {
        self.skipped = skipped;
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub stage: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(stage: impl Into<String>) -> Self {
        Report { stage: stage.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn passes(&self, name: &str) -> bool {
        self.checks.iter().any(|c| c.name == name && c.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn summary(&self) -> String {
        let passed = self.checks.iter().filter(|c| c.pass).count();
        format!("{}: {}/{} checks passed", self.stage, passed, self.checks.len())
    }
}
