//! Machine-checked report format shared by every subcommand.

use std::collections::BTreeMap;

use rectadd_core::QNum;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Fractional digits used for display-only decimals.
pub const DISPLAY_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "violated")]
    Violated,
    /// Sampled evidence; never a proof either way.
    #[serde(rename = "evidence-only")]
    EvidenceOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub claim: String,
    pub status: Status,
    pub exact_values: Vec<String>,
    pub approximations: Vec<String>,
}

impl Finding {
    /// An exactly decided claim.
    pub fn check(claim: impl Into<String>, holds: bool) -> Self {
        Finding {
            claim: claim.into(),
            status: if holds { Status::Verified } else { Status::Violated },
            exact_values: Vec::new(),
            approximations: Vec::new(),
        }
    }

    pub fn evidence(claim: impl Into<String>) -> Self {
        Finding {
            claim: claim.into(),
            status: Status::EvidenceOnly,
            exact_values: Vec::new(),
            approximations: Vec::new(),
        }
    }

    pub fn with_values<'a>(mut self, values: impl IntoIterator<Item = &'a QNum>) -> Self {
        for v in values {
            self.exact_values.push(v.to_string());
            self.approximations.push(v.approximate(DISPLAY_DIGITS));
        }
        self
    }

    pub fn with_approximations(mut self, approx: impl IntoIterator<Item = String>) -> Self {
        self.approximations.extend(approx);
        self
    }

    pub fn is_violated(&self) -> bool {
        self.status == Status::Violated
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub findings: Vec<Finding>,
    pub exit_status: i32,
    /// Command-specific payload (decomposition, per-order table, probe samples).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            findings: Vec::new(),
            exit_status: 0,
            details: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, finding: Finding) {
        if finding.is_violated() {
            self.exit_status = 1;
        }
        self.findings.push(finding);
    }

    pub fn set_details<T: Serialize>(&mut self, details: &T) {
        self.details = Some(serde_json::to_value(details).expect("report details serialize"));
    }

    pub fn passed(&self) -> bool {
        self.exit_status == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn finding(&self, needle: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.claim.contains(needle))
    }
}
