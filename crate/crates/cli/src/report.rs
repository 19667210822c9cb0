//! The JSON envelope shared by every subcommand.

use std::collections::BTreeMap;

use mbf_core::bifact::CheckOutcome;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: Option<String>) -> Self {
        Check { name: name.into(), pass, detail }
    }
}

impl From<&CheckOutcome> for Check {
    fn from(c: &CheckOutcome) -> Self {
        let detail = c.detail.clone().or_else(|| c.verdict.map(|v| format!("{v:?}")));
        Check { name: c.name.clone(), pass: c.pass, detail }
    }
}

/// Deterministic: parameters are sorted and no clock is read.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub result: Value,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            tool: "mbf",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            params: BTreeMap::new(),
            pass: true,
            checks: vec![],
            result: Value::Null,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(value).expect("plain data"));
        self
    }

    pub fn check(&mut self, c: Check) {
        self.pass &= c.pass;
        self.checks.push(c);
    }

    pub fn result(mut self, value: impl Serialize) -> Self {
        self.result = serde_json::to_value(value).expect("plain data");
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}
