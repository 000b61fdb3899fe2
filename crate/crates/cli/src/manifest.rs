use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Versions {
    pub artifact: String,
    /// SHA-256 of the canonical input JSON.
    pub config_hash: String,
}

/// Everything needed to re-run a command and compare its output.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Canonical JSON of all arguments (object keys sorted).
    pub inputs: Value,
    pub seed: Option<u64>,
    pub versions: Versions,
    pub threads: usize,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(command: &str, inputs: Value, seed: Option<u64>, threads: usize) -> Self {
        let canonical = serde_json::to_string(&inputs).expect("inputs serialize");
        let digest = Sha256::digest(canonical.as_bytes());
        let config_hash = digest.iter().map(|b| format!("{b:02x}")).collect();
        RunManifest {
            command: command.to_string(),
            inputs,
            seed,
            versions: Versions {
                artifact: env!("CARGO_PKG_VERSION").to_string(),
                config_hash,
            },
            threads,
            outputs: Vec::new(),
        }
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, text + "\n")
    }
}

/// `<out>.manifest.json` next to an output file.
pub fn alongside(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}
