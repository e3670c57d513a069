//! Shared check-outcome types; JSON report assembly lives in [`crate::suites`].

use serde::Serialize;

/// A concrete counterexample produced by a failed check: where it failed and
/// the exact symbolic values that disagree.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    /// Which identity / relation instance failed.
    pub location: String,
    /// Exact symbolic discrepancy (rendered left- and right-hand values).
    pub detail: String,
}

impl Witness {
    pub fn new(location: impl Into<String>, detail: impl Into<String>) -> Self {
        Witness {
            location: location.into(),
            detail: detail.into(),
        }
    }
}

/// Outcome of a single named check.
pub type Check = Result<(), Witness>;

/// Version of the serialized report schema; bumped on breaking changes.
pub const SCHEMA_VERSION: u32 = 1;

/// Verdict of a suite run. `Fail` means a genuine nonzero residual against
/// an exact comparison; `Inconclusive` means a bounded search ended without
/// a certificate either way.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// Result of running one named suite, before parameter echoing.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub status: Status,
    pub witnesses: Vec<Witness>,
    /// Free-form annotations (e.g. which argument variant passed).
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    pub fn pass() -> Self {
        SuiteOutcome {
            status: Status::Pass,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    /// Fold a single check into the outcome: a witness downgrades the
    /// status to fail.
    pub fn absorb(&mut self, check: Check) {
        if let Err(w) = check {
            self.status = Status::Fail;
            self.witnesses.push(w);
        }
    }

    /// Downgrade to inconclusive unless already failed.
    pub fn inconclusive(&mut self, why: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::Inconclusive;
        }
        self.notes.push(why.into());
    }

    pub fn from_checks(checks: impl IntoIterator<Item = Check>) -> Self {
        let mut out = SuiteOutcome::pass();
        for c in checks {
            out.absorb(c);
        }
        out
    }
}

/// One suite's serialized report. `elapsedMillis` is omitted when timing is
/// suppressed so that equal configurations serialize byte-identically.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport<P: Serialize> {
    pub suite: String,
    pub params: P,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_millis: Option<u64>,
}

/// Top-level report stream wrapper.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport<P: Serialize> {
    pub schema_version: u32,
    pub reports: Vec<SuiteReport<P>>,
    pub all_passed: bool,
}
