//! Run manifests: what was asked, what was resolved, what was written.
//!
//! The manifest is always the last file a command emits, so its presence
//! certifies that every listed output exists.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::CliError;

#[derive(serde::Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_path: Option<String>,
    /// Fully resolved parameters, sorted by key.
    pub parameters: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    pub tool_version: String,
    pub constants_table_version: String,
}

impl RunManifest {
    pub fn new(command: &str, config_path: Option<&Path>) -> Self {
        Self {
            command: command.to_string(),
            config_path: config_path.map(|p| p.display().to_string()),
            parameters: BTreeMap::new(),
            outputs: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            constants_table_version: ringfloquet::constants::CONSTANTS_VERSION.to_string(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn record_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    /// Writes the manifest; every recorded output must already exist.
    pub fn write(&self, path: &PathBuf) -> Result<(), CliError> {
        for out in &self.outputs {
            if !Path::new(out).exists() {
                return Err(CliError::internal(format!(
                    "manifest lists `{out}` but it was never written"
                )));
            }
        }
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::internal(format!("manifest serialization: {e}")))?;
        std::fs::write(path, json + "\n")
            .map_err(|e| CliError::internal(format!("writing {}: {e}", path.display())))?;
        Ok(())
    }
}
