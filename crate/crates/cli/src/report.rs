use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

/// Machine-readable trace of one invocation. Timing lives here and not in
/// the command output, which stays byte-identical across runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub elapsed_ms: u128,
    pub outputs: Vec<String>,
    pub warnings: Vec<String>,
    pub exit_code: u8,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            parameters: BTreeMap::new(),
            elapsed_ms: 0,
            outputs: Vec::new(),
            warnings: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.into(), value.into());
        self
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }
}
