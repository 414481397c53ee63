//! Check records shared by every verification routine.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// First nonzero residual or violated condition, written out in full.
    Fail(String),
    NotApplicable(String),
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The identity or condition being checked, written as a formula.
    pub identity: String,
    /// Number of evaluated instances.
    pub cases: usize,
    pub status: Status,
    /// Advisory checks are reported but never decide the verdict.
    pub advisory: bool,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        !self.status.is_fail()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// True when no binding check failed.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.advisory || r.passed())
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    /// Prefixes every record name; used when a sub-report is embedded.
    pub fn renamed(mut self, prefix: &str) -> Report {
        for rec in &mut self.records {
            rec.name = format!("{prefix}{}", rec.name);
        }
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.advisory && r.status.is_fail())
    }
}

/// Counts evaluated cases and keeps the first failing witness.
#[derive(Debug)]
pub struct Tally {
    name: String,
    identity: String,
    cases: usize,
    witness: Option<String>,
    advisory: bool,
}

impl Tally {
    pub fn new(name: impl Into<String>, identity: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            identity: identity.into(),
            cases: 0,
            witness: None,
            advisory: false,
        }
    }

    pub fn advisory(mut self) -> Self {
        self.advisory = true;
        self
    }

    /// Records one case; `witness` is only built when `ok` is false and no
    /// earlier failure was seen.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn finish(self) -> CheckRecord {
        CheckRecord {
            name: self.name,
            identity: self.identity,
            cases: self.cases,
            status: match self.witness {
                None => Status::Pass,
                Some(w) => Status::Fail(w),
            },
            advisory: self.advisory,
        }
    }
}

pub fn not_applicable(name: &str, identity: &str, reason: impl Into<String>) -> CheckRecord {
    CheckRecord {
        name: name.into(),
        identity: identity.into(),
        cases: 0,
        status: Status::NotApplicable(reason.into()),
        advisory: false,
    }
}
