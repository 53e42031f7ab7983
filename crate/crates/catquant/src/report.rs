//! Pass/fail reports for exhaustive law checks.

use std::fmt;

/// Outcome of running one law suite over an enumerated case set.
///
/// `cases` counts every instance that was checked; `violations` holds a
/// human-readable description of each counterexample, including the witness
/// that produced it. An empty violation list means the law held everywhere.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            cases: 0,
            violations: Vec::new(),
        }
    }

    /// Record one checked case; on failure, `witness` describes the counterexample.
    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations.push(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_counterexample(&self) -> Option<&str> {
        self.violations.first().map(|s| s.as_str())
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: {} cases, all passed", self.name, self.cases)
        } else {
            write!(
                f,
                "{}: {} cases, {} violation(s); first: {}",
                self.name,
                self.cases,
                self.violations.len(),
                self.violations[0]
            )
        }
    }
}
