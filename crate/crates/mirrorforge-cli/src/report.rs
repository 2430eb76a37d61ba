//! Run reports and the exit-code contract.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use mirrorforge::report::CheckReport;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

/// Exit status of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass = 0,
    CheckFailed = 1,
    Invalid = 2,
    NotStabilized = 3,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    /// Every truncation parameter the run used.
    pub params: BTreeMap<String, String>,
    pub notes: Vec<String>,
    pub checks: Vec<CheckReport>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, input: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            params: BTreeMap::new(),
            notes: Vec::new(),
            checks: Vec::new(),
            warnings: Vec::new(),
            passed: true,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn push(&mut self, c: CheckReport) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn outcome(&self) -> Outcome {
        if !self.passed {
            Outcome::CheckFailed
        } else if !self.warnings.is_empty() {
            Outcome::NotStabilized
        } else {
            Outcome::Pass
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Markdown => self.markdown(),
        }
    }

    fn markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# mirrorforge {}: {}\n", self.command, self.input);
        if !self.params.is_empty() {
            let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = writeln!(s, "Parameters: {}\n", params.join(", "));
        }
        for n in &self.notes {
            let _ = writeln!(s, "- {n}");
        }
        if !self.notes.is_empty() {
            s.push('\n');
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s, "| check | cases | verdict |\n|---|---|---|");
            for c in &self.checks {
                let verdict = match (&c.witness, c.passed) {
                    (_, true) => "PASS".to_string(),
                    (Some(w), false) => format!("FAIL: `{w}`"),
                    (None, false) => "FAIL".to_string(),
                };
                let _ = writeln!(s, "| {} | {} | {verdict} |", c.name, c.cases);
            }
            s.push('\n');
        }
        for w in &self.warnings {
            let _ = writeln!(s, "**warning:** {w}");
        }
        let _ = writeln!(s, "**{}**", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}
