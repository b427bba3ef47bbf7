//! Reports emitted by every subcommand.

use std::fmt::Write as _;

use hocat::report::Check;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub kind: String,
    pub command: String,
    pub status: Status,
    pub checks: Vec<Check>,
    /// Free-form result lines, shown after the checks in text output.
    #[serde(default)]
    pub details: Vec<String>,
    /// Machine-readable result, e.g. a produced document.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            version: REPORT_VERSION,
            kind: "report".into(),
            command: command.into(),
            status: Status::Pass,
            checks: Vec::new(),
            details: Vec::new(),
            data: None,
        }
    }

    pub fn error(command: &str, message: String) -> Self {
        let mut r = Report::new(command);
        r.status = Status::Error;
        r.details.push(message);
        r
    }

    pub fn with_checks(mut self, checks: impl IntoIterator<Item = Check>) -> Self {
        self.checks.extend(checks);
        self.settle();
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
        self.settle();
    }

    pub fn detail(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    fn settle(&mut self) {
        if self.status != Status::Error {
            self.status = if self.checks.iter().all(Check::passed) {
                Status::Pass
            } else {
                Status::Fail
            };
        }
    }

    pub fn failed_checks(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

/// Render a report. Text output is line-oriented: a status line, one line
/// per check with its witnesses indented below, then the detail lines.
pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let n = r.checks.len();
            let plural = if n == 1 { "check" } else { "checks" };
            match r.status {
                Status::Pass => writeln!(s, "PASS ({n} {plural})"),
                Status::Fail => writeln!(s, "FAIL ({} of {n} {plural} failed)", r.failed_checks()),
                Status::Error => writeln!(s, "ERROR"),
            }
            .unwrap();
            for c in &r.checks {
                if c.passed() {
                    writeln!(s, "  pass  {} ({} checked)", c.name, c.checked).unwrap();
                } else {
                    writeln!(
                        s,
                        "  FAIL  {} ({} checked, {} failed)",
                        c.name,
                        c.checked,
                        c.failures.len()
                    )
                    .unwrap();
                    for w in &c.failures {
                        writeln!(s, "        {w}").unwrap();
                    }
                }
            }
            for d in &r.details {
                writeln!(s, "{d}").unwrap();
            }
            s
        }
    }
}

/// Parse a structured report.
pub fn parse_report(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_passes() {
        let r = Report::new("validate");
        assert_eq!(emit_report(&r, Format::Text), "PASS (0 checks)\n");
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn status_follows_checks() {
        let mut bad = Check::new("pentagon");
        bad.record(false, || "objects (a, b, c, d): x ≠ y".into());
        let r = Report::new("build-moncat").with_checks([Check::new("triangle"), bad]);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.exit_code(), 1);
        let text = emit_report(&r, Format::Text);
        assert!(text.starts_with("FAIL (1 of 2 checks failed)\n"));
        assert!(text.contains("objects (a, b, c, d): x ≠ y"));
    }

    #[test]
    fn structured_round_trip() {
        let mut r = Report::new("homology").with_checks([Check::new("∂∂ = 0")]);
        r.detail("H_1 = ℤ");
        r.data = Some(serde_json::json!({"betti": [1, 1]}));
        let back = parse_report(&emit_report(&r, Format::Structured)).unwrap();
        assert_eq!(back, r);
    }
}
