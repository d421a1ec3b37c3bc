//! Structured pass/fail reports shared by the verification suites and the CLI.

use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one named check. Ids are dotted paths like
/// `verify.table2.30.5` so report sets sort deterministically.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub status: CheckStatus,
    pub witnesses: Vec<String>,
    /// Wall-clock milliseconds; excluded from machine-readable output so that
    /// identical invocations stay byte-identical.
    #[serde(skip)]
    pub runtime_ms: u128,
}

impl CheckReport {
    pub fn pass(id: impl Into<String>) -> CheckReport {
        CheckReport {
            id: id.into(),
            status: CheckStatus::Pass,
            witnesses: vec![],
            runtime_ms: 0,
        }
    }

    pub fn pass_with(id: impl Into<String>, witnesses: Vec<String>) -> CheckReport {
        CheckReport {
            id: id.into(),
            status: CheckStatus::Pass,
            witnesses,
            runtime_ms: 0,
        }
    }

    pub fn fail(id: impl Into<String>, witnesses: Vec<String>) -> CheckReport {
        let witnesses = if witnesses.is_empty() {
            vec!["failed without witness detail".into()]
        } else {
            witnesses
        };
        CheckReport {
            id: id.into(),
            status: CheckStatus::Fail,
            witnesses,
            runtime_ms: 0,
        }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> CheckReport {
        CheckReport {
            id: id.into(),
            status: CheckStatus::Skipped,
            witnesses: vec![reason.into()],
            runtime_ms: 0,
        }
    }

    /// Builds a pass/fail report, computing failure witnesses lazily.
    pub fn from_bool(
        id: impl Into<String>,
        ok: bool,
        witnesses: impl FnOnce() -> Vec<String>,
    ) -> CheckReport {
        if ok {
            CheckReport::pass(id)
        } else {
            CheckReport::fail(id, witnesses())
        }
    }

    pub fn timed(mut self, started: Instant) -> CheckReport {
        self.runtime_ms = started.elapsed().as_millis();
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// Sorts a report set by id; merging order must not affect output.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| a.id.cmp(&b.id));
}
