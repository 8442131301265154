//! Pass/fail records shared by the verification routines.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named check. `residual` holds the nonzero leftover of a failed
/// identity, `witness` any value worth reporting alongside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_us: Option<u64>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, residual: None, witness: None, timing_us: None }
    }

    pub fn fail(name: impl Into<String>, residual: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Fail, residual: Some(residual.into()), witness: None, timing_us: None }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, residual: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, residual())
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.timing_us = Some(start.elapsed().as_micros() as u64);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
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

    pub fn status(&self) -> Status {
        if self.passed() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "{tag} {}", c.name)?;
            if let Some(r) = &c.residual {
                write!(f, "  residual: {r}")?;
            }
            if let Some(w) = &c.witness {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
