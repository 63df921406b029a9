//! Pass/fail reports for the verification routines.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Where and how a failing check went wrong; empty on success.
    pub detail: String,
}

/// An ordered list of named checks. Verification routines never panic on a
/// failed identity; they record it here.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.record(name, true, String::new());
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.record(name, false, detail);
    }

    /// Records `Ok` as a pass and `Err(detail)` as a failure.
    pub fn check(&mut self, name: impl Into<String>, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.pass(name),
            Err(detail) => self.fail(name, detail),
        }
    }

    pub fn expect(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, detail());
        }
    }

    fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn merge(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                writeln!(f, "ok   {}", c.name)?;
            } else {
                writeln!(f, "FAIL {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_failure() {
        let mut inner = Report::new();
        inner.pass("a");
        inner.fail("b", "broken");
        let mut outer = Report::new();
        outer.pass("x");
        outer.merge("inner", inner);
        assert!(!outer.all_passed());
        assert_eq!(outer.first_failure().unwrap().name, "inner: b");
        assert_eq!(outer.len(), 3);
    }
}
