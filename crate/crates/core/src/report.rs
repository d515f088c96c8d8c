use std::fmt;

use serde::Serialize;

/// One named check with its outcome. `witness` carries the first
/// counterexample on failure; `note` carries remarks that do not affect the
/// outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Ordered list of checks. Failures are data here, never errors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: impl Into<String>, pass: bool, witness: Option<String>) {
        self.checks.push(Check { check: check.into(), pass, witness, note: None });
    }

    pub fn push_noted(&mut self, check: impl Into<String>, pass: bool, note: impl Into<String>) {
        self.checks.push(Check { check: check.into(), pass, witness: None, note: Some(note.into()) });
    }

    /// Records a check whose witness is only kept when it fails.
    pub fn record(&mut self, check: impl Into<String>, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.push(check, true, None),
            Err(w) => self.push(check, false, Some(w)),
        }
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "[{}] {}", if c.pass { "PASS" } else { "FAIL" }, c.check)?;
            if let Some(w) = &c.witness {
                write!(f, " (witness: {w})")?;
            }
            if let Some(n) = &c.note {
                write!(f, " (note: {n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
