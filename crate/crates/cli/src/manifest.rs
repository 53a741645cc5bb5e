use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Everything that determines a run's output files.
#[derive(Debug, Clone, Serialize)]
pub struct RunKey {
    pub subcommand: String,
    pub params: BTreeMap<String, Value>,
    pub solver: BTreeMap<String, Value>,
    pub input_hash: String,
}

#[derive(Debug, Serialize)]
struct Written<'a> {
    manifest_hash: &'a str,
    #[serde(flatten)]
    key: &'a RunKey,
    outputs: &'a [String],
    wall_clock_seconds: f64,
}

/// Collects the outputs of one invocation and records them in
/// `manifest.json`. The hash covers only the [`RunKey`], so identical keys
/// give identical CSV files.
pub struct RunManifest {
    key: RunKey,
    hash: String,
    out: PathBuf,
    outputs: Vec<String>,
    started: Instant,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(key: RunKey, out: &Path) -> Result<Self> {
        let canonical = serde_json::to_vec(&key)?;
        fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
        Ok(Self {
            hash: sha256_hex(&canonical),
            key,
            out: out.to_path_buf(),
            outputs: Vec::new(),
            started: Instant::now(),
        })
    }

    /// Writes `# manifest: <hash>`, then `body`.
    pub fn write(&mut self, name: &str, body: &str) -> Result<()> {
        let path = self.out.join(name);
        fs::write(&path, format!("# manifest: {}\n{body}", self.hash))
            .with_context(|| format!("writing {}", path.display()))?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    pub fn finish(self) -> Result<()> {
        let record = Written {
            manifest_hash: &self.hash,
            key: &self.key,
            outputs: &self.outputs,
            wall_clock_seconds: self.started.elapsed().as_secs_f64(),
        };
        let path = self.out.join("manifest.json");
        fs::write(&path, serde_json::to_string_pretty(&record)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}
