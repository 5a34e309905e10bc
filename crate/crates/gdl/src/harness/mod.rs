//! End-to-end checks: graded duality slice by slice, its filtered form, the
//! Ext vanishing pattern, worked example modules and a seeded random suite.
//! Every check returns a [`Report`] that renders as text, JSON or CSV.

mod builders;
mod duality;
mod suite;

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};

pub use builders::{
    check_nilpotent_orbit, check_projective_line, check_quadric_cone, nilpotent_orbit_module, quadric_cone_expected, quadric_cone_slice, QuadricConeExpectation,
};
pub use duality::{duality_check, ext_vanishing_report, filtered_duality_check, involution_check, support_dimension, DualSide};
pub use suite::{default_window, duality_suite, random_module, random_suite, route_equivalence, route_equivalence_suite, structured_inputs};

use crate::graded::HilbertEntry;

/// Current layout of serialized reports.
pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One check's output. `entries` are flat records; `columns` fixes their
/// order in text and CSV.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub check: String,
    pub params: BTreeMap<String, Value>,
    #[serde(skip)]
    pub columns: Vec<String>,
    pub entries: Vec<BTreeMap<String, Value>>,
    pub verdict: Verdict,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(check: &str, columns: &[&str]) -> Self {
        Report {
            schema: SCHEMA,
            check: check.to_string(),
            params: BTreeMap::new(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            entries: Vec::new(),
            verdict: Verdict::Pass,
            seed: None,
            failures: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn push(&mut self, row: Vec<(&str, Value)>) {
        self.entries.push(row.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
    }

    /// Records a failed expectation; the verdict becomes FAIL.
    pub fn fail(&mut self, why: String) {
        self.verdict = Verdict::Fail;
        self.failures.push(why);
    }

    pub fn expect(&mut self, ok: bool, why: impl FnOnce() -> String) {
        if !ok {
            self.fail(why());
        }
    }

    /// Folds several reports into one whose entries are the sub-verdicts.
    pub fn combine(check: &str, parts: &[Report]) -> Report {
        let mut r = Report::new(check, &["check", "params", "verdict", "entries"]);
        for p in parts {
            r.push(vec![
                ("check", json!(p.check)),
                ("params", Value::Object(p.params.clone().into_iter().collect())),
                ("verdict", json!(p.verdict.as_str())),
                ("entries", json!(p.entries.len())),
            ]);
            for f in &p.failures {
                r.fail(format!("{}: {f}", p.check));
            }
        }
        r
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("reports serialize") + "\n",
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "check: {}", self.check).unwrap();
        for (k, v) in &self.params {
            writeln!(out, "  {k} = {}", cell(v)).unwrap();
        }
        if let Some(s) = self.seed {
            writeln!(out, "  seed = {s}").unwrap();
        }
        let rows: Vec<Vec<String>> = self.entries.iter().map(|e| self.columns.iter().map(|c| e.get(c).map_or("-".into(), cell)).collect()).collect();
        let widths: Vec<usize> = self.columns.iter().enumerate().map(|(i, c)| rows.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap()).collect();
        let line = |cells: &[String]| cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ");
        if !rows.is_empty() {
            writeln!(out, "{}", line(&self.columns)).unwrap();
            for r in &rows {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        for f in &self.failures {
            writeln!(out, "failure: {f}").unwrap();
        }
        writeln!(out, "verdict: {}", self.verdict.as_str()).unwrap();
        out
    }

    fn render_csv(&self) -> String {
        let mut out = self.columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
        out.push('\n');
        for e in &self.entries {
            let row: Vec<String> = self.columns.iter().map(|c| csv_field(&e.get(c).map_or(String::new(), cell))).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A slice value as a report cell: the dimension for `m = 0`, otherwise the
/// total (or `null`) with the Hilbert function.
pub fn hilbert_value(e: &HilbertEntry) -> Value {
    match e {
        HilbertEntry::Dim { dim } => json!(dim),
        HilbertEntry::Graded { hf, total } => {
            let hf: Vec<usize> = hf.iter().map(|x| x.1).collect();
            json!({ "total": total, "hf": hf })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_all_formats() {
        let mut r = Report::new("demo", &["p", "dim"]).param("n", 2);
        r.push(vec![("p", json!(-1)), ("dim", json!(3))]);
        r.push(vec![("p", json!(0)), ("dim", json!({"a": [1, 2]}))]);
        let text = r.render(Format::Text);
        assert!(text.contains("verdict: PASS"));
        assert!(text.lines().any(|l| l.trim_start().starts_with("p")));
        let csv = r.render(Format::Csv);
        assert_eq!(csv.lines().next(), Some("p,dim"));
        assert!(csv.contains("\"{\"\"a\"\":[1,2]}\""));
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["verdict"], "PASS");
        assert_eq!(v["entries"][0]["dim"], 3);
        r.fail("x".into());
        assert_eq!(r.verdict, Verdict::Fail);
    }
}
