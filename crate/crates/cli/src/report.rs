//! Verification reports: canonical JSON and a plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Refused,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Refused => 2,
        }
    }
}

/// Outcome of one finding; `info` entries never affect the status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub check: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Finding {
    pub fn info(check: &str, value: impl Serialize) -> Self {
        Finding { check: check.into(), outcome: Outcome::Info, witness: None, value: to_value(value), tolerance: None }
    }

    /// Passes iff `ok`.
    pub fn check(check: &str, ok: bool, value: impl Serialize) -> Self {
        let outcome = if ok { Outcome::Pass } else { Outcome::Fail };
        Finding { check: check.into(), outcome, witness: None, value: to_value(value), tolerance: None }
    }

    /// Passes iff `value ≤ tolerance` (NaN fails).
    pub fn within(check: &str, value: f64, tolerance: f64) -> Self {
        let mut f = Finding::check(check, value <= tolerance, value);
        f.tolerance = Some(tolerance);
        f
    }

    pub fn with_witness(mut self, witness: impl Serialize) -> Self {
        self.witness = Some(to_value(witness));
        self
    }
}

/// Numeric parameters carried by every report of a numerical command.
#[derive(Clone, Debug, Serialize)]
pub struct Numeric {
    pub value: Value,
    pub tolerance_estimate: f64,
    pub quad_order: usize,
    pub fd_step: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub status: Status,
    pub findings: Vec<Finding>,
    pub provenance: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<Numeric>,
}

pub(crate) fn to_value(v: impl Serialize) -> Value {
    // Non-finite floats serialize as null.
    serde_json::to_value(v).unwrap_or(Value::Null)
}

impl Report {
    pub fn new(provenance: BTreeMap<String, Value>) -> Self {
        Report { status: Status::Pass, findings: Vec::new(), provenance, reason: None, numeric: None }
    }

    pub fn refused(reason: impl Into<String>, provenance: BTreeMap<String, Value>) -> Self {
        Report { status: Status::Refused, reason: Some(reason.into()), ..Report::new(provenance) }
    }

    pub fn push(&mut self, f: Finding) {
        self.findings.push(f);
    }

    /// Sets the status from the findings unless the report was refused.
    pub fn finish(mut self) -> Self {
        if self.status != Status::Refused {
            self.status = if self.findings.iter().any(|f| f.outcome == Outcome::Fail) { Status::Fail } else { Status::Pass };
        }
        self
    }

    /// Pretty JSON with keys in sorted order; stable under re-serialization.
    pub fn to_json(&self) -> String {
        canonical_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "status: {}", to_value(self.status).as_str().unwrap_or("?"));
        if let Some(r) = &self.reason {
            let _ = writeln!(out, "reason: {r}");
        }
        if let Some(n) = &self.numeric {
            let _ = writeln!(
                out,
                "value: {}  (tolerance estimate {:e}, quad order {}, fd step {:e})",
                n.value, n.tolerance_estimate, n.quad_order, n.fd_step
            );
        }
        for f in &self.findings {
            let tag = match f.outcome {
                Outcome::Pass => "pass",
                Outcome::Fail => "FAIL",
                Outcome::Info => "info",
            };
            let _ = write!(out, "[{tag}] {}: {}", f.check, f.value);
            if let Some(t) = f.tolerance {
                let _ = write!(out, " (tolerance {t:e})");
            }
            if let Some(w) = &f.witness {
                let _ = write!(out, " at {w}");
            }
            out.push('\n');
        }
        for (k, v) in &self.provenance {
            let _ = writeln!(out, "  {k} = {v}");
        }
        out
    }
}

/// `serde_json::Value` keeps object keys sorted, so going through it gives
/// a canonical key order.
pub fn canonical_json(v: impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(v)).unwrap_or_else(|_| "null".into());
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_passes() {
        let r = Report::new(BTreeMap::new()).finish();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v, serde_json::json!({"status": "pass", "findings": [], "provenance": {}}));
        assert_eq!(r.status.exit_code(), 0);
    }

    #[test]
    fn status_follows_findings() {
        let mut r = Report::new(BTreeMap::new());
        r.push(Finding::info("note", 1));
        r.push(Finding::within("small", 1e-3, 1e-6));
        let r = r.finish();
        assert_eq!(r.status, Status::Fail);
        assert!(r.to_text().contains("[FAIL] small"));
        let refused = Report::refused("bad input", BTreeMap::new()).finish();
        assert_eq!(refused.status.exit_code(), 2);
    }

    #[test]
    fn json_is_stable() {
        let mut p = BTreeMap::new();
        p.insert("z".to_string(), Value::from(1));
        p.insert("a".to_string(), Value::from("x"));
        let mut r = Report::new(p);
        r.push(Finding::check("c", true, vec![1, 2]).with_witness((0, 1, 1)));
        let once = r.to_json();
        let again = canonical_json(serde_json::from_str::<Value>(&once).unwrap());
        assert_eq!(once, again);
        assert!(once.find("\"a\"").unwrap() < once.find("\"z\"").unwrap());
    }
}
