use serde::Serialize;
use serde_json::Value;

/// Outcome of one verified identity, with a witness when it fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub passed: bool,
    pub detail: Value,
}

impl CheckRecord {
    pub fn new(check: impl Into<String>, passed: bool, detail: Value) -> Self {
        CheckRecord {
            check: check.into(),
            passed,
            detail,
        }
    }
}

pub fn all_passed(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.passed)
}

/// First failing record, if any.
pub fn first_failure(records: &[CheckRecord]) -> Option<&CheckRecord> {
    records.iter().find(|r| !r.passed)
}
