use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::IoError;

/// Record of one CLI invocation, written next to its outputs.
///
/// `args` is the subcommand with its arguments, normalized so that
/// re-running it against `out_dir` regenerates the same files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub out_dir: String,
    pub outputs: Vec<String>,
    pub duration_ms: f64,
}

impl RunManifest {
    pub fn new(
        command: &str,
        args: Vec<String>,
        params: serde_json::Value,
        seed: Option<u64>,
    ) -> Self {
        Self {
            command: command.to_string(),
            args,
            params,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            out_dir: String::new(),
            outputs: Vec::new(),
            duration_ms: 0.0,
        }
    }

    pub fn finish(&mut self, out_dir: &Path, outputs: Vec<String>, elapsed: Duration) {
        self.out_dir = out_dir.display().to_string();
        self.outputs = outputs;
        self.duration_ms = elapsed.as_secs_f64() * 1e3;
    }

    pub fn write(&self, path: &Path) -> Result<(), IoError> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}
