//! Structured run reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::docs::InputDigest;

/// Echo of one command run with its inputs, parameters and results.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    /// Command-line arguments after the program name.
    pub command: Vec<String>,
    /// Digests of every input.
    pub inputs: Vec<InputDigest>,
    /// Seed of the random generator, when one was used.
    pub seed: Option<u64>,
    /// Effective tolerances and numeric parameters.
    pub tolerances: BTreeMap<String, f64>,
    /// Command-specific results.
    pub results: serde_json::Value,
    /// Elapsed seconds, present only with `--timing`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl RunReport {
    /// Empty report for `command`.
    pub fn new(command: Vec<String>) -> Self {
        Self {
            command,
            inputs: Vec::new(),
            seed: None,
            tolerances: BTreeMap::new(),
            results: serde_json::Value::Null,
            wall_time_s: None,
        }
    }

    /// Records a tolerance or numeric parameter.
    pub fn tol(&mut self, name: &str, value: f64) {
        self.tolerances.insert(name.to_string(), value);
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

/// JSON number, or `null` for non-finite values.
pub fn finite(v: f64) -> serde_json::Value {
    if v.is_finite() {
        serde_json::json!(v)
    } else {
        serde_json::Value::Null
    }
}
