use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// What was run and what it produced; enough to repeat a run exactly with
/// the same build.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
    pub wall_time_secs: f64,
    pub outputs: Vec<String>,
    /// The witness line, when the run produced one.
    pub result: Option<String>,
    pub tool_version: String,
}

impl RunRecord {
    pub fn new(command: &str) -> Self {
        RunRecord {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            seed: None,
            wall_time_secs: 0.0,
            outputs: Vec::new(),
            result: None,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let raw = self
            .parameters
            .get(key)
            .ok_or_else(|| Error::InvalidArgument(format!("record has no parameter `{key}`")))?;
        raw.parse()
            .map_err(|_| Error::InvalidArgument(format!("record parameter `{key}` = `{raw}` is malformed")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        Self::from_json(&s)
    }
}
