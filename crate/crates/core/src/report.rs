use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one named check, with an optional polynomial or numeric
/// witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, ok: bool, witness: Option<String>) -> Self {
        CheckReport { check_name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, witness }
    }

    pub fn pass(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, true, Some(witness.into()))
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self::new(name, false, Some(witness.into()))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A list of checks; passes when every check does.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn push(&mut self, c: CheckReport) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn find(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.check_name == name)
    }

    /// Prefixes every check name, e.g. with a chart label.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.check_name = format!("{prefix}{}", c.check_name);
        }
        self
    }
}
