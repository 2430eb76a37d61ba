//! Pass/fail reports shared by every verification routine.

use serde::Serialize;

/// Outcome of one named check over a finite set of cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// The first failing case with its residual.
    pub witness: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), passed: true, cases: 0, witness: None }
    }

    pub fn case(&mut self) {
        self.cases += 1;
    }

    pub fn fail(&mut self, witness: impl FnOnce() -> String) {
        if self.passed {
            self.passed = false;
            self.witness = Some(witness());
        }
    }

    /// Record one case, failing it when `ok` is false.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.case();
        if !ok {
            self.fail(witness);
        }
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        match &self.witness {
            Some(w) => format!("{verdict} {} ({} cases): {w}", self.name, self.cases),
            None => format!("{verdict} {} ({} cases)", self.name, self.cases),
        }
    }
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}
