//! The JSON document printed by every command.

use nervekit::{Check, Status, Verdict};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Overall,
    /// Sorted by name.
    pub entries: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: Vec<String>, verdict: Verdict, result: Option<Value>) -> Self {
        let status = if verdict.passed() {
            Overall::Pass
        } else {
            Overall::Fail
        };
        Report {
            command,
            status,
            entries: verdict.checks,
            result,
            error: None,
            timing: Timing { elapsed_ms: 0.0 },
        }
    }

    pub fn error(command: Vec<String>, message: String) -> Self {
        Report {
            command,
            status: Overall::Error,
            entries: Vec::new(),
            result: None,
            error: Some(message),
            timing: Timing { elapsed_ms: 0.0 },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Overall::Pass => 0,
            Overall::Fail => 1,
            Overall::Error => 2,
        }
    }

    pub fn entry(&self, name: &str) -> Option<&Check> {
        self.entries.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.entries.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
