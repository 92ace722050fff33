use serde::{Deserialize, Serialize};

/// Whether a check is expected to stay within its tolerance or to exceed it.
///
/// `Exceeds` checks record demonstrations of failure (for example the massless
/// ZM marginal missing the interference terms): the artifact passes when the
/// residual is larger than the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    #[default]
    Within,
    Exceeds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check_name: String,
    pub residual: f64,
    pub tolerance: f64,
    #[serde(default)]
    pub expect: Expect,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check_within(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) -> bool {
        self.push(name.into(), residual, tolerance, Expect::Within)
    }

    pub fn check_exceeds(&mut self, name: impl Into<String>, residual: f64, threshold: f64) -> bool {
        self.push(name.into(), residual, threshold, Expect::Exceeds)
    }

    fn push(&mut self, check_name: String, residual: f64, tolerance: f64, expect: Expect) -> bool {
        // NaN residuals never pass.
        let passed = match expect {
            Expect::Within => residual.abs() <= tolerance,
            Expect::Exceeds => residual.abs() > tolerance,
        };
        self.entries.push(CheckEntry {
            check_name,
            residual,
            tolerance,
            expect,
            passed,
        });
        passed
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.check_name == name)
    }
}
