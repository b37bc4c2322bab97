//! Run manifests: the rule, parameters and seed behind every output, plus
//! SHA-256 digests of what was read and written.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const ENGINE_VERSION: &str = concat!("gaw ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// What the file holds (`svg`, `csv`, `pgm`, `text`, `report`).
    pub role: String,
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerationManifest {
    pub engine_version: String,
    pub rule_id: String,
    pub seed: u64,
    pub params: Map<String, Value>,
    #[serde(default)]
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<OutputRecord>,
    /// Derived facts about the outputs, e.g. the range a graymap was
    /// normalized over.
    #[serde(default)]
    pub info: Map<String, Value>,
}

impl GenerationManifest {
    pub fn new(rule_id: &str, seed: u64, params: Map<String, Value>) -> Self {
        Self {
            engine_version: ENGINE_VERSION.to_string(),
            rule_id: rule_id.to_string(),
            seed,
            params,
            inputs: Vec::new(),
            outputs: Vec::new(),
            info: Map::new(),
        }
    }

    /// Pretty JSON with keys sorted at every level and a trailing newline.
    pub fn to_json(&self) -> String {
        // serde_json's Map is a BTreeMap, so routing through Value sorts keys.
        let value = serde_json::to_value(self).expect("manifest is always serializable");
        let mut s = serde_json::to_string_pretty(&value).expect("value is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn check_version(&self) -> Result<()> {
        if self.engine_version != ENGINE_VERSION {
            return Err(Error::VersionMismatch {
                found: self.engine_version.clone(),
                expected: ENGINE_VERSION.to_string(),
            });
        }
        Ok(())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Manifest location for a primary output: `<output>.manifest.json`.
pub fn manifest_path_for(output: &Path) -> std::path::PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    name.into()
}
