//! Pass/fail records shared by every verification routine.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    /// Residual or counterexample in textual form, only on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl IdentityCheck {
    pub fn pass(name: impl Into<String>) -> Self {
        IdentityCheck {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        IdentityCheck {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        }
    }

    /// `pass` when `ok`, otherwise `fail` with the lazily built witness.
    pub fn check<F: FnOnce() -> String>(name: impl Into<String>, ok: bool, witness: F) -> Self {
        if ok {
            IdentityCheck::pass(name)
        } else {
            IdentityCheck::fail(name, witness())
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn new() -> Self {
        IdentityReport::default()
    }

    pub fn push(&mut self, c: IdentityCheck) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Checks whose name starts with `prefix`.
    pub fn named<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a IdentityCheck> {
        self.checks.iter().filter(move |c| c.name.starts_with(prefix))
    }
}
