//! Pass/fail records shared by the verification suites.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

/// Version tag of the structured report layout.
pub const REPORT_SCHEMA: &str = "blockweights-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// The claim this check exercises.
    pub reference: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    pub fn new(id: impl Into<String>, reference: impl Into<String>, pass: bool, details: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            reference: reference.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            details: details.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    /// Caveats that are recorded but not checked.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks.extend(other.checks);
        for n in other.notes {
            self.note(n);
        }
    }

    pub fn totals(&self) -> Totals {
        let pass = self.checks.iter().filter(|c| c.passed()).count();
        Totals {
            pass,
            fail: self.checks.len() - pass,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Structured form; the runtime sits alone in the header so that the
    /// rest is reproducible byte for byte.
    pub fn to_json(&self, runtime: Option<Duration>) -> serde_json::Value {
        serde_json::json!({
            "header": {
                "schema": REPORT_SCHEMA,
                "runtime_ms": runtime.map(|d| d.as_millis() as u64),
            },
            "suite": self.suite,
            "totals": self.totals(),
            "checks": self.checks,
            "notes": self.notes,
        })
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag}  {:<width$}  {}  [{}]", c.id, c.details, c.reference);
        }
        for n in &self.notes {
            let _ = writeln!(out, "NOTE  {n}");
        }
        let t = self.totals();
        let _ = writeln!(out, "{}: {} passed, {} failed", self.suite, t.pass, t.fail);
        out
    }
}
