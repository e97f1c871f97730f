//! Pass/fail reports shared by the randomized and exhaustive checks.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

/// Outcome of one named check. A failing report carries the first
/// counterexample found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub status: CheckStatus,
    /// Number of cases examined before stopping.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>, cases: usize) -> Self {
        CheckReport { check: check.into(), status: CheckStatus::Pass, cases, detail: None }
    }

    pub fn fail(check: impl Into<String>, cases: usize, detail: impl Into<String>) -> Self {
        CheckReport { check: check.into(), status: CheckStatus::Fail, cases, detail: Some(detail.into()) }
    }

    pub fn inconclusive(check: impl Into<String>, cases: usize, detail: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            status: CheckStatus::Inconclusive,
            cases,
            detail: Some(detail.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Worst status of a list: any failure wins over inconclusive, which wins
/// over pass. The empty list passes.
pub fn overall(reports: &[CheckReport]) -> CheckStatus {
    if reports.iter().any(|r| r.status == CheckStatus::Fail) {
        CheckStatus::Fail
    } else if reports.iter().any(|r| r.status == CheckStatus::Inconclusive) {
        CheckStatus::Inconclusive
    } else {
        CheckStatus::Pass
    }
}
