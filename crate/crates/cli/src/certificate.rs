use std::fmt::Write as _;

use coble_core::verify::Check;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Result of one command before timing and hashing.
pub struct Outcome {
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub outputs: Value,
}

#[derive(Serialize)]
pub struct Certificate {
    pub command: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub outputs: Value,
    pub pass: bool,
    pub timing_ms: u64,
    pub artifact_hash: String,
}

impl Certificate {
    pub fn new(command: String, outcome: Outcome, timing_ms: u64) -> Self {
        let pass = outcome.checks.iter().all(|c| c.pass);
        let hashed = serde_json::json!({
            "command": command,
            "inputs": outcome.inputs,
            "checks": outcome.checks,
            "outputs": outcome.outputs,
        });
        let digest = Sha256::digest(canonical(&hashed).as_bytes());
        let artifact_hash = digest.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        Certificate {
            command,
            inputs: outcome.inputs,
            checks: outcome.checks,
            outputs: outcome.outputs,
            pass,
            timing_ms,
            artifact_hash,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.command);
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            let prov = serde_json::to_value(c.expected.provenance).ok();
            let prov = prov.as_ref().and_then(Value::as_str).unwrap_or("");
            let _ = writeln!(s, "  {tag} {}: {} (expected {} [{prov}])", c.name, c.actual, c.expected.value);
        }
        if let Value::Object(map) = &self.outputs {
            for (k, v) in map {
                let _ = writeln!(s, "  {k} = {}", compact(v));
            }
        }
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{verdict} in {} ms, artifact {}", self.timing_ms, self.artifact_hash);
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// JSON with object keys sorted at every level and no insignificant whitespace.
pub fn canonical(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let body: Vec<String> = keys
                .into_iter()
                .map(|k| format!("{}:{}", Value::String(k.clone()), canonical(&map[k])))
                .collect();
            format!("{{{}}}", body.join(","))
        }
        Value::Array(xs) => format!("[{}]", xs.iter().map(canonical).collect::<Vec<_>>().join(",")),
        other => other.to_string(),
    }
}
