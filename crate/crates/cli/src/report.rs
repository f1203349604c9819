//! Machine-parseable run report: every command echoes its fully-resolved
//! configuration so a run can be reproduced from its own output.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub elapsed_ms: u64,
    pub result: serde_json::Value,
}

impl Report {
    pub fn new(
        command: &str,
        config: serde_json::Value,
        elapsed_ms: u64,
        result: serde_json::Value,
    ) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config,
            elapsed_ms,
            result,
        }
    }
}
