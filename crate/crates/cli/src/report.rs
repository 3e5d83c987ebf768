//! Machine-readable output. Slopes and valuations are serialized as exact
//! rational strings ("2", "1/2"), never floats; field order is fixed by the
//! struct, and the checks map is a BTreeMap, so serialization is
//! deterministic and round-trips byte-identically.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct JsonReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slopes: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical_slopes: Option<Vec<String>>,
    pub checks: BTreeMap<String, CheckJson>,
    pub q_precision_used: usize,
    pub timing_ms: u64,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct CheckJson {
    pub pass: bool,
    pub detail: String,
}

impl JsonReport {
    pub fn new(command: &str, _started: Instant) -> Self {
        JsonReport {
            schema_version: 1,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            slopes: None,
            classical_dimension: None,
            classical_slopes: None,
            checks: BTreeMap::new(),
            q_precision_used: 0,
            timing_ms: 0,
        }
    }

    pub fn print(mut self, started: Instant) {
        self.timing_ms = started.elapsed().as_millis() as u64;
        println!("{}", serde_json::to_string_pretty(&self).expect("report serializes"));
    }
}
