//! Deterministic JSON and markdown reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::checks::CheckResult;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub mode: String,
    pub input: Value,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub requested: usize,
    pub passed: usize,
    pub failed: usize,
    pub all_passed: bool,
}

impl Report {
    pub fn new(command: &str, mode: &str, input: Value, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        Report {
            tool: "qgc",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            mode: mode.to_string(),
            input,
            summary: Summary { requested: checks.len(), passed, failed: checks.len() - passed, all_passed: passed == checks.len() },
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# qgc report\n");
        let _ = writeln!(out, "- command: `{}`", self.command);
        let _ = writeln!(out, "- mode: `{}`", self.mode);
        let _ = writeln!(out, "- input: `{}`", self.input);
        let _ = writeln!(
            out,
            "- checks: {} requested, {} passed, {} failed\n",
            self.summary.requested, self.summary.passed, self.summary.failed
        );
        for c in &self.checks {
            let _ = writeln!(out, "## {}: {}\n", c.name, if c.pass { "PASS" } else { "FAIL" });
            let _ = writeln!(out, "> {}\n", c.anchor);
            let _ = writeln!(out, "Residual: `{}`\n", compact(&c.residual));
            if c.details.as_object().is_some_and(|m| !m.is_empty()) {
                let _ = writeln!(out, "```json\n{}\n```\n", serde_json::to_string_pretty(&c.details).expect("json"));
            }
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
