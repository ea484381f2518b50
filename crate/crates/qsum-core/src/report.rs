//! Outcome records shared by every verifier.

use std::fmt;
use std::time::Instant;

/// Outcome of one identity check.
///
/// `Indeterminate` is a first-class result: a check whose expression hits a
/// zero/pole degeneration is reported, never silently skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome record of one identity check. A failing report always carries a
/// witness rendering of the discrepancy.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub case_name: String,
    pub params: String,
    pub status: Status,
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Builder that stamps elapsed wall time into the report.
pub struct ReportTimer {
    case_name: String,
    params: String,
    start: Instant,
}

impl ReportTimer {
    pub fn start(case_name: impl Into<String>, params: impl Into<String>) -> Self {
        ReportTimer {
            case_name: case_name.into(),
            params: params.into(),
            start: Instant::now(),
        }
    }

    pub fn pass(self) -> VerificationReport {
        self.finish(Status::Pass, None)
    }

    pub fn fail(self, witness: String) -> VerificationReport {
        self.finish(Status::Fail, Some(witness))
    }

    pub fn indeterminate(self, note: String) -> VerificationReport {
        self.finish(Status::Indeterminate, Some(note))
    }

    pub fn finish(self, status: Status, witness: Option<String>) -> VerificationReport {
        debug_assert!(
            status != Status::Fail || witness.is_some(),
            "failing reports must carry a witness"
        );
        VerificationReport {
            case_name: self.case_name,
            params: self.params,
            status,
            witness,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}
