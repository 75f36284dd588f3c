//! The uniform report produced by every subcommand: a parameter echo, a
//! list of findings, optional structured data, and a timing figure.
//!
//! Reports are deterministic for fixed inputs except for `timing_ms`;
//! JSON output uses sorted keys throughout (serde_json's default map).

use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// One named check with its outcome and a human-readable witness.
#[derive(Clone, Debug)]
pub struct Finding {
    pub check: String,
    pub status: Status,
    pub witness: String,
}

/// A full subcommand report.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub findings: Vec<Finding>,
    pub data: Value,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            parameters: BTreeMap::new(),
            findings: Vec::new(),
            data: Value::Null,
            timing_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn finding(&mut self, check: &str, status: Status, witness: impl ToString) -> &mut Self {
        self.findings.push(Finding {
            check: check.into(),
            status,
            witness: witness.to_string(),
        });
        self
    }

    pub fn check(&mut self, name: &str, ok: bool, witness: impl ToString) -> &mut Self {
        self.finding(name, if ok { Status::Pass } else { Status::Fail }, witness)
    }

    /// 0 when every finding passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.findings.iter().all(|f| f.status == Status::Pass) {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let params: Map<String, Value> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let findings: Vec<Value> = self
            .findings
            .iter()
            .map(|f| {
                json!({
                    "check": f.check,
                    "status": f.status.as_str(),
                    "witness": f.witness,
                })
            })
            .collect();
        json!({
            "command": self.command,
            "parameters": params,
            "findings": findings,
            "data": self.data,
            "timing_ms": self.timing_ms,
        })
    }

    /// Human-readable rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.parameters {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for f in &self.findings {
            out.push_str(&format!(
                "{:<12} {} ({})\n",
                f.status.as_str().to_uppercase(),
                f.check,
                f.witness
            ));
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.exit_code() == 0 { "ok" } else { "not ok" }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_findings() {
        let mut r = Report::new("demo");
        assert_eq!(r.exit_code(), 0);
        r.check("a", true, "w");
        assert_eq!(r.exit_code(), 0);
        r.finding("b", Status::Inconclusive, "w");
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_has_sorted_stable_keys() {
        let mut r = Report::new("demo");
        r.param("z", 1).param("a", 2);
        let s = serde_json::to_string(&r.to_json()).unwrap();
        let a = s.find("\"a\"").unwrap();
        let z = s.find("\"z\"").unwrap();
        assert!(a < z);
    }
}
