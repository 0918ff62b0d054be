//! Report-valued validation. Validators collect named checks instead of
//! failing fast so that `describe` can show everything that was examined.

use std::fmt;

/// One named check with its outcome.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Empty when passing; a concrete counterexample or reason otherwise.
    pub detail: String,
}

/// A bundle of checks about one subject (an algebra, a group, ...).
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), checks: Vec::new() }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed: true, detail: String::new() });
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed: false, detail: detail.into() });
    }

    pub fn record(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, detail);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for c in other.checks {
            self.checks.push(Check {
                name: format!("{}: {}", other.subject, c.name),
                ..c
            });
        }
    }

    /// First failure, if any; handy for turning a report into an error.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}:", self.subject)?;
        for c in &self.checks {
            if c.passed {
                writeln!(f, "  ok   {}", c.name)?;
            } else {
                writeln!(f, "  FAIL {} ({})", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}
