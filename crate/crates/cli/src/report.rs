//! Report model and its text and JSON renderings.

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// Where the document came from: a file path or `catalog:<name>`.
    pub source: String,
    pub objects: Vec<ObjectReport>,
    pub suites: Vec<SuiteReport>,
    /// Only filled in with `--timing`, so default output is reproducible.
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectReport {
    pub name: String,
    pub kind: String,
    pub order: usize,
    pub result: Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: String,
    pub expected: String,
    pub actual: String,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

impl Report {
    pub fn failure_count(&self) -> usize {
        self.suites.iter().map(|s| s.failures.len()).sum()
    }
}

fn text_value(out: &mut String, indent: &str, key: &str, v: &Json) {
    match v {
        Json::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            out.push_str(&format!("{indent}{key}: {} item(s)\n", items.len()));
            for x in items {
                out.push_str(&format!("{indent}  - {x}\n"));
            }
        }
        Json::Object(map) => {
            out.push_str(&format!("{indent}{key}:\n"));
            for (k, x) in map {
                text_value(out, &format!("{indent}  "), k, x);
            }
        }
        _ => out.push_str(&format!("{indent}{key}: {v}\n")),
    }
}

pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(report).expect("reports always serialize");
            v.push(b'\n');
            v
        }
        Format::Text => {
            let mut out = format!("command: {}\nsource: {}\n", report.command, report.source);
            for o in &report.objects {
                out.push_str(&format!("object {} ({}, order {})\n", o.name, o.kind, o.order));
                match &o.result {
                    Json::Object(map) => {
                        for (k, v) in map {
                            text_value(&mut out, "  ", k, v);
                        }
                    }
                    other => text_value(&mut out, "  ", "result", other),
                }
            }
            for s in &report.suites {
                let verdict = if s.failures.is_empty() { "pass" } else { "FAIL" };
                out.push_str(&format!(
                    "suite {}: {verdict}, {} case(s), {} failure(s)\n",
                    s.name,
                    s.cases,
                    s.failures.len()
                ));
                for f in &s.failures {
                    out.push_str(&format!(
                        "  {}: expected {}, got {}, witness [{}]\n",
                        f.instance,
                        f.expected,
                        f.actual,
                        f.witness.join(", ")
                    ));
                }
            }
            if let Some(ms) = report.elapsed_ms {
                out.push_str(&format!("elapsed_ms: {ms}\n"));
            }
            out.into_bytes()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            command: "verify-theorems".into(),
            source: "x.ring".into(),
            objects: vec![ObjectReport {
                name: "E".into(),
                kind: "ext".into(),
                order: 8,
                result: serde_json::json!({"radical": ["(0, 0)"], "ideals": [{"members": ["(0, 0)"]}]}),
            }],
            suites: vec![SuiteReport {
                name: "rad".into(),
                cases: 0,
                failures: vec![],
            }],
            elapsed_ms: None,
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let bytes = emit_report(&r, Format::Json);
        let back: Report = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn empty_suite_shape() {
        let bytes = emit_report(&sample(), Format::Json);
        let v: Json = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(v["suites"], serde_json::json!([{"name": "rad", "cases": 0, "failures": []}]));
        assert!(v["elapsed_ms"].is_null());
    }

    #[test]
    fn text_is_line_oriented() {
        let text = String::from_utf8(emit_report(&sample(), Format::Text)).unwrap();
        assert_eq!(
            text,
            "command: verify-theorems\nsource: x.ring\nobject E (ext, order 8)\n  ideals: 1 item(s)\n    - {\"members\":[\"(0, 0)\"]}\n  radical: [\"(0, 0)\"]\nsuite rad: pass, 0 case(s), 0 failure(s)\n"
        );
    }
}
