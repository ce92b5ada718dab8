//! Check reports in text and JSON form.

use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inapplicable => "INAPPLICABLE",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::Inapplicable => 1,
        }
    }
}

impl From<vortex_core::maps::Verdict> for Status {
    fn from(v: vortex_core::maps::Verdict) -> Self {
        match v {
            vortex_core::maps::Verdict::Pass => Status::Pass,
            vortex_core::maps::Verdict::Fail => Status::Fail,
            vortex_core::maps::Verdict::Inapplicable => Status::Inapplicable,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub summary: String,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, summary: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status,
            summary: summary.into(),
        }
    }
}

/// Output of one subcommand. JSON keys are emitted in sorted order.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub subject: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub details: Value,
}

impl Report {
    pub fn new(
        command: &'static str,
        subject: impl Into<String>,
        checks: Vec<Check>,
        details: Value,
    ) -> Self {
        let status = if checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if checks.iter().any(|c| c.status == Status::Inapplicable) {
            Status::Inapplicable
        } else {
            Status::Pass
        };
        Report {
            command,
            subject: subject.into(),
            status,
            checks,
            details,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, self.subject);
        for c in &self.checks {
            if c.summary.is_empty() {
                let _ = writeln!(out, "  {:<12} {}", c.status.as_str(), c.name);
            } else {
                let _ = writeln!(out, "  {:<12} {}: {}", c.status.as_str(), c.name, c.summary);
            }
        }
        let _ = writeln!(out, "status: {}", self.status.as_str());
        out
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }
}

/// `{1, 4, 7}`.
pub fn set_text(ids: &[u32]) -> String {
    let inner: Vec<String> = ids.iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}
