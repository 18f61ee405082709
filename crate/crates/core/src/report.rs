//! Verification reports and their canonical JSON form.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Nothing was checked.
    Warn,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Warn => "warn",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    List(Vec<f64>),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Num(v) => write!(f, "{v}"),
            Self::Int(v) => write!(f, "{v}"),
            Self::Text(v) => write!(f, "{v}"),
            Self::Bool(v) => write!(f, "{v}"),
            Self::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        Self::Num(v)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        Self::Int(v as i64)
    }
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        Self::Int(v)
    }
}

impl From<bool> for ParamValue {
    fn from(v: bool) -> Self {
        Self::Bool(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        Self::Text(v.to_string())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        Self::Text(v)
    }
}

impl From<Vec<f64>> for ParamValue {
    fn from(v: Vec<f64>) -> Self {
        Self::List(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Detail {
    pub label: String,
    pub residual: f64,
    pub threshold: f64,
}

impl Detail {
    pub fn passed(&self) -> bool {
        self.residual <= self.threshold
    }
}

/// One named check: parameters, per-item residuals and the overall verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, ParamValue>,
    pub status: Status,
    pub max_residual: f64,
    pub details: Vec<Detail>,
}

impl VerificationReport {
    /// `key=value` pairs of the parameters on one line.
    pub fn params_line(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Detail> {
        self.details.iter().filter(|d| !d.passed())
    }

    pub fn summary_line(&self) -> String {
        format!("{:<4} {:<44} max residual {:.3e} ({} items)", self.status, self.check, self.max_residual, self.details.len())
    }
}

#[derive(Clone, Debug, Default)]
pub struct ReportBuilder {
    check: String,
    params: BTreeMap<String, ParamValue>,
    details: Vec<Detail>,
}

impl ReportBuilder {
    pub fn new(check: impl Into<String>) -> Self {
        Self { check: check.into(), ..Self::default() }
    }

    pub fn param(mut self, key: &str, v: impl Into<ParamValue>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn set_param(&mut self, key: &str, v: impl Into<ParamValue>) {
        self.params.insert(key.to_string(), v.into());
    }

    pub fn item(&mut self, label: impl Into<String>, residual: f64, threshold: f64) {
        self.details.push(Detail { label: label.into(), residual, threshold });
    }

    /// Pulls the items of another report in, prefixing labels.
    pub fn absorb(&mut self, prefix: &str, other: &VerificationReport) {
        for d in &other.details {
            self.item(format!("{prefix}{}", d.label), d.residual, d.threshold);
        }
    }

    pub fn finish(mut self) -> VerificationReport {
        self.details.sort_by(|a, b| a.label.cmp(&b.label));
        let max_residual = self
            .details
            .iter()
            .fold(0.0f64, |m, d| if d.residual.is_nan() || m.is_nan() { f64::NAN } else { m.max(d.residual) });
        let status = if self.details.is_empty() {
            Status::Warn
        } else if self.details.iter().all(Detail::passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport { check: self.check, params: self.params, status, max_residual, details: self.details }
    }
}

fn json_float(out: &mut String, v: f64) {
    if v.is_finite() {
        let _ = write!(out, "{v:.16e}");
    } else {
        json_str(out, &v.to_string());
    }
}

fn json_str(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

fn json_param(out: &mut String, v: &ParamValue) {
    match v {
        ParamValue::Num(x) => json_float(out, *x),
        ParamValue::Int(i) => {
            let _ = write!(out, "{i}");
        }
        ParamValue::Text(s) => json_str(out, s),
        ParamValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        ParamValue::List(xs) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                json_float(out, *x);
            }
            out.push(']');
        }
    }
}

fn json_report(out: &mut String, r: &VerificationReport) {
    out.push_str("{\"check\":");
    json_str(out, &r.check);
    out.push_str(",\"details\":[");
    for (i, d) in r.details.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"label\":");
        json_str(out, &d.label);
        out.push_str(",\"residual\":");
        json_float(out, d.residual);
        out.push_str(",\"threshold\":");
        json_float(out, d.threshold);
        out.push('}');
    }
    out.push_str("],\"max_residual\":");
    json_float(out, r.max_residual);
    out.push_str(",\"params\":{");
    for (i, (k, v)) in r.params.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        json_str(out, k);
        out.push(':');
        json_param(out, v);
    }
    out.push_str("},\"status\":");
    json_str(out, &r.status.to_string());
    out.push('}');
}

/// `{"checks":[...],"version":...}` with sorted keys and 17 significant digits. Checks are sorted by
/// name, then by their serialized form, so the output does not depend on the order of `reports`.
pub fn canonical_json(reports: &[VerificationReport]) -> String {
    let mut parts: Vec<(&str, String)> = reports
        .iter()
        .map(|r| {
            let mut s = String::new();
            json_report(&mut s, r);
            (r.check.as_str(), s)
        })
        .collect();
    parts.sort();
    let mut out = String::from("{\"checks\":[");
    for (i, (_, s)) in parts.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(s);
    }
    out.push_str("],\"version\":");
    json_str(&mut out, REPORT_VERSION);
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rules() {
        let mut b = ReportBuilder::new("x");
        b.item("b", 1e-13, 1e-12);
        b.item("a", 2e-13, 1e-12);
        let r = b.finish();
        assert!(r.passed());
        assert_eq!(r.details[0].label, "a");
        assert_eq!(r.max_residual, 2e-13);

        let mut b = ReportBuilder::new("y");
        b.item("a", f64::NAN, 1.0);
        assert_eq!(b.finish().status, Status::Fail);
        assert_eq!(ReportBuilder::new("z").finish().status, Status::Warn);
    }

    #[test]
    fn canonical_form() {
        let mut b = ReportBuilder::new("demo").param("q", 0.5).param("N", 64usize).param("name", "a\"b");
        b.item("r", 0.1, 1.0);
        let text = canonical_json(&[b.finish()]);
        assert_eq!(
            text,
            "{\"checks\":[{\"check\":\"demo\",\"details\":[{\"label\":\"r\",\"residual\":1.0000000000000001e-1,\
\"threshold\":1.0000000000000000e0}],\"max_residual\":1.0000000000000001e-1,\"params\":{\"N\":64,\
\"name\":\"a\\\"b\",\"q\":5.0000000000000000e-1},\"status\":\"pass\"}],\"version\":\"1\"}\n"
        );
    }
}
