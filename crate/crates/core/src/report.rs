use serde::{Deserialize, Serialize};

/// One named pass/fail check with a human-readable detail line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(check: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            check: check.into(),
            pass,
            detail: detail.into(),
        }
    }
}
