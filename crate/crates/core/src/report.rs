//! Pass/fail records produced by the verification routines.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Outcome of checking one identity over a family of cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub axiom: String,
    pub cases: u64,
    /// First failing case, as key/value pairs.
    pub counterexample: Option<Vec<(String, String)>>,
}

impl Check {
    pub fn new(axiom: impl Into<String>) -> Self {
        Self { axiom: axiom.into(), cases: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Count one case; on the first failure keep the data produced by `why`.
    pub fn record<F>(&mut self, ok: bool, why: F)
    where
        F: FnOnce() -> Vec<(&'static str, String)>,
    {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(why().into_iter().map(|(k, v)| (k.to_string(), v)).collect());
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, axiom: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{status} {} ({} cases)", self.axiom, self.cases)?;
        if let Some(cx) = &self.counterexample {
            for (k, v) in cx {
                write!(f, " {k}={v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
