//! Machine-readable result envelope shared by all command-line entry
//! points: canonical JSON on stdout, byte-identical across repeated runs
//! of the same invocation.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::json::to_canonical_string;

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct Report {
    /// Echo of the invocation, program name included.
    pub command: Vec<String>,
    /// Hex digest of the raw input file, when there is one.
    pub input_hash: Option<String>,
    pub tool_version: String,
    /// Seed used for randomized work, when applicable.
    pub seed: Option<u64>,
    pub payload: Value,
}

impl Report {
    pub fn new(command: Vec<String>, payload: Value) -> Report {
        Report {
            command,
            input_hash: None,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed: None,
            payload,
        }
    }

    pub fn with_input(mut self, bytes: &[u8]) -> Report {
        self.input_hash = Some(sha256_hex(bytes));
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Report {
        self.seed = Some(seed);
        self
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "command": self.command,
            "input_hash": self.input_hash,
            "payload": self.payload,
            "seed": self.seed,
            "tool_version": self.tool_version,
        })
    }

    pub fn to_canonical_json(&self) -> String {
        to_canonical_string(&self.to_json_value())
    }
}
