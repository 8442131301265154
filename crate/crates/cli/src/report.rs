//! Run reports and their text rendering.

use std::fmt::Write as _;

use galois_core::report::{Check, Status};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Version tag of the JSON layout below; see `schema/run-report.v1.json`.
pub const SCHEMA: &str = "galois-run-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JobStatus {
    Pass,
    Fail,
    /// The job could not run: bad parameters or an exceeded cap.
    Error,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobReport {
    pub name: String,
    pub op: String,
    pub status: JobStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub timing_ms: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub engine_version: String,
    pub scenario: String,
    pub scenario_sha256: String,
    pub status: JobStatus,
    pub jobs: Vec<JobReport>,
    pub timing_ms: f64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenario {} (sha256 {})", self.scenario, &self.scenario_sha256[..16]);
        for j in &self.jobs {
            let _ = writeln!(out, "[{}] {} ({}) {:.1} ms", tag(j.status), j.name, j.op, j.timing_ms);
            if let Some(e) = &j.error {
                let _ = writeln!(out, "    error: {e}");
            }
            for n in &j.notes {
                let _ = writeln!(out, "    note: {n}");
            }
            for c in &j.checks {
                if c.status == Status::Fail {
                    let _ = writeln!(out, "    FAIL {}: {}", c.name, c.residual.as_deref().unwrap_or(""));
                }
            }
            let passed = j.checks.iter().filter(|c| c.passed()).count();
            if !j.checks.is_empty() {
                let _ = writeln!(out, "    {passed}/{} checks passed", j.checks.len());
            }
            if let Some(v) = &j.value {
                let _ = writeln!(out, "    value: {v}");
            }
        }
        let _ = writeln!(out, "overall: {} in {:.1} ms", tag(self.status), self.timing_ms);
        out
    }
}

fn tag(s: JobStatus) -> &'static str {
    match s {
        JobStatus::Pass => "PASS",
        JobStatus::Fail => "FAIL",
        JobStatus::Error => "ERROR",
    }
}

/// Removes every timing field, for byte-level comparison of two runs.
pub fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.retain(|k, _| !k.starts_with("timing"));
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
