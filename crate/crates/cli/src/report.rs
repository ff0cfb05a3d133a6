//! Report tree shared by every command, rendered as text or JSON.

use coverlab_core::ExactRational;
use serde::Serialize;
use serde_json::{json, Value};

pub const VERSION: &str = concat!("coverlab ", env!("CARGO_PKG_VERSION"));

/// Exit status when every asserted check holds.
pub const EXIT_OK: i32 = 0;
/// Exit status when some asserted check fails.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit status for input errors and exhausted budgets.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub check: String,
    /// Asserted checks decide the exit status; informational ones never do.
    pub asserted: bool,
    pub holds: Option<bool>,
    pub value: Value,
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub inputs: Value,
    pub verdicts: Vec<Verdict>,
    pub seed: Option<u64>,
    pub warnings: Vec<String>,
    pub truncated: bool,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_string(),
            version: VERSION.to_string(),
            inputs,
            verdicts: Vec::new(),
            seed: None,
            warnings: Vec::new(),
            truncated: false,
        }
    }

    pub fn assert(&mut self, check: &str, holds: bool, value: Value) -> &mut Verdict {
        self.push(check, true, Some(holds), value)
    }

    pub fn inform(&mut self, check: &str, holds: Option<bool>, value: Value) -> &mut Verdict {
        self.push(check, false, holds, value)
    }

    fn push(&mut self, check: &str, asserted: bool, holds: Option<bool>, value: Value) -> &mut Verdict {
        self.verdicts.push(Verdict { check: check.to_string(), asserted, holds, value, witness: None });
        self.verdicts.last_mut().expect("just pushed")
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn exit_code(&self) -> i32 {
        if self.truncated {
            EXIT_ERROR
        } else if self.verdicts.iter().any(|v| v.asserted && v.holds == Some(false)) {
            EXIT_VIOLATION
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} ({})\n", self.command, self.version);
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        for v in &self.verdicts {
            let status = match (v.asserted, v.holds) {
                (true, Some(true)) => "PASS",
                (true, _) => "FAIL",
                (false, Some(true)) => "info yes",
                (false, Some(false)) => "info no",
                (false, None) => "info",
            };
            out.push_str(&format!("[{status}] {}: {}\n", v.check, compact(&v.value)));
            if let Some(w) = &v.witness {
                out.push_str(&format!("    witness: {}\n", compact(w)));
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        if self.truncated {
            out.push_str("truncated: budget exhausted, result incomplete\n");
        }
        out
    }
}

impl Verdict {
    pub fn with_witness(&mut self, witness: Value) {
        self.witness = Some(witness);
    }
}

/// Rationals as `{"num","den"}` strings.
pub fn rat(q: &ExactRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

/// Text form of a value: rationals as `p/q`, other trees as compact JSON.
fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(map) if map.len() == 2 && map.contains_key("num") && map.contains_key("den") => {
            let (n, d) = (map["num"].as_str().unwrap_or("?"), map["den"].as_str().unwrap_or("?"));
            if d == "1" {
                n.to_string()
            } else {
                format!("{n}/{d}")
            }
        }
        Value::Object(map) => {
            let parts: Vec<String> = map.iter().map(|(k, x)| format!("{k}={}", compact(x))).collect();
            parts.join(" ")
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(compact).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    #[test]
    fn rationals_are_strings() {
        let q = ExactRational::from_f64(0.75).unwrap();
        assert_eq!(rat(&q), json!({"num": "3", "den": "4"}));
        assert_eq!(compact(&rat(&q)), "3/4");
    }

    #[test]
    fn exit_codes() {
        let mut r = Report::new("x", json!({}));
        r.inform("i", Some(false), json!(1));
        assert_eq!(r.exit_code(), EXIT_OK);
        r.assert("a", false, json!(1));
        assert_eq!(r.exit_code(), EXIT_VIOLATION);
        r.truncated = true;
        assert_eq!(r.exit_code(), EXIT_ERROR);
    }
}
