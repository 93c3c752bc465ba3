//! The `--json` envelope.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const VERSION: &str = concat!("kneser ", env!("CARGO_PKG_VERSION"));

/// JSON Schema for [`RunReport`], printed by `kneser schema`.
pub const SCHEMA: &str = r#"{
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "RunReport",
  "type": "object",
  "required": ["command", "inputs_digest", "results", "timing_ms", "version", "exit_code"],
  "additionalProperties": false,
  "properties": {
    "command": { "type": "array", "items": { "type": "string" } },
    "inputs_digest": { "type": "string", "pattern": "^sha256:[0-9a-f]{64}$" },
    "results": {},
    "timing_ms": { "type": "number", "minimum": 0 },
    "version": { "type": "string" },
    "exit_code": { "type": "integer", "enum": [0, 1, 2] }
  }
}
"#;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub results: Value,
    pub timing_ms: f64,
    pub version: String,
    pub exit_code: i32,
}

impl RunReport {
    /// Serializes and checks the text parses back to the same report.
    pub fn to_validated_json(&self) -> anyhow::Result<String> {
        let text = serde_json::to_string_pretty(self)?;
        let back: RunReport = serde_json::from_str(&text)?;
        anyhow::ensure!(back == *self, "report does not round-trip");
        anyhow::ensure!(
            back.inputs_digest.len() == 71 && back.inputs_digest.starts_with("sha256:"),
            "malformed digest"
        );
        Ok(text)
    }
}

/// Hashes the argument vector and every input file read, in order.
#[derive(Default)]
pub struct InputDigest {
    hasher: Sha256,
}

impl InputDigest {
    pub fn add_args(&mut self, args: &[String]) {
        for a in args {
            self.hasher.update((a.len() as u64).to_le_bytes());
            self.hasher.update(a.as_bytes());
        }
    }

    pub fn add_input(&mut self, bytes: &[u8]) {
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn finish(self) -> String {
        let hex: String = self
            .hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        format!("sha256:{hex}")
    }
}
