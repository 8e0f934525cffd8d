use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Everything needed to rerun a command and check its outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Arguments after the program name, `--manifest` removed.
    pub parameters: Vec<String>,
    pub seed: Option<u64>,
    /// Input file path to sha256.
    pub inputs: BTreeMap<String, String>,
    /// `stdout` and every written file path to sha256.
    pub artifacts: BTreeMap<String, String>,
    pub exit_code: i32,
    pub wall_time_ms: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn load(path: &Path) -> std::io::Result<RunManifest> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(std::io::Error::other)
}
