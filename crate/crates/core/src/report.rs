//! Structured results for named verification checks.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    PreconditionFailed,
}

impl Status {
    pub fn is_pass(self) -> bool {
        matches!(self, Status::Pass)
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::PreconditionFailed => "precondition-failed",
        };
        f.write_str(s)
    }
}

/// Result of one named check. `witness` carries a counterexample or a short
/// structured explanation; it is `null` on a clean pass.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    pub witness: Option<serde_json::Value>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>) -> Self {
        CheckReport { check: check.into(), status: Status::Pass, witness: None }
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn fail(check: impl Into<String>, witness: serde_json::Value) -> Self {
        CheckReport { check: check.into(), status: Status::Fail, witness: Some(witness) }
    }

    pub fn inconclusive(check: impl Into<String>, witness: serde_json::Value) -> Self {
        CheckReport { check: check.into(), status: Status::Inconclusive, witness: Some(witness) }
    }

    pub fn precondition_failed(check: impl Into<String>, witness: serde_json::Value) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::PreconditionFailed,
            witness: Some(witness),
        }
    }
}
