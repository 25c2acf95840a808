//! Structured pass/fail results shared by all verification routines.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Witnesses kept per report; further failures are only counted.
pub const MAX_WITNESSES: usize = 16;

/// A failing location together with the exact values observed there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub at: String,
    pub values: BTreeMap<String, String>,
}

impl Witness {
    pub fn new(at: impl Into<String>) -> Self {
        Witness {
            at: at.into(),
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.values.insert(key.into(), value.to_string());
        self
    }
}

/// Result of a verification: overall verdict, number of exact checks
/// performed, failing witnesses in the order they were found, named facts
/// and nested sub-steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub pass: bool,
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub facts: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<VerificationReport>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport {
            name: name.into(),
            pass: true,
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
            facts: BTreeMap::new(),
            label: None,
            notes: Vec::new(),
            checks: Vec::new(),
        }
    }

    /// Counts one exact check; on failure stores the witness produced by
    /// `witness` (lazily, so passing checks cost nothing).
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.fail_with(witness());
        }
    }

    pub fn fail_with(&mut self, w: Witness) {
        self.pass = false;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    /// Marks the report failed without a location, e.g. for an error that
    /// aborted the computation.
    pub fn fail(&mut self, reason: impl Into<String>) {
        self.fail_with(Witness::new("-").with("error", reason.into()));
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.insert(key.into(), value.to_string());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Appends a sub-step; its checks and failures count towards this
    /// report, and its witnesses are copied up tagged with the step name.
    pub fn push(&mut self, sub: VerificationReport) {
        self.checked += sub.checked;
        self.failures += sub.failures;
        if !sub.pass {
            self.pass = false;
        }
        for w in &sub.witnesses {
            if self.witnesses.len() >= MAX_WITNESSES {
                break;
            }
            let mut w = w.clone();
            w.values.entry("check".into()).or_insert_with(|| sub.name.clone());
            self.witnesses.push(w);
        }
        self.checks.push(sub);
    }

    pub fn check(&self, name: &str) -> Option<&VerificationReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Looks a fact up in this report and then depth-first in sub-steps.
    pub fn find_fact(&self, key: &str) -> Option<&str> {
        if let Some(v) = self.facts.get(key) {
            return Some(v);
        }
        self.checks.iter().find_map(|c| c.find_fact(key))
    }
}
