use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use weakcross_core::setfam::{parse_family_bytes, serialize_family, Family};

pub const SCHEMA: u32 = 1;

/// JSON envelope printed by every subcommand.
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub result: Value,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, inputs: Map::new(), result: Value::Null }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn render(&self) -> String {
        let doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "inputs": self.inputs,
            "result": self.result,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("report is plain JSON");
        text.push('\n');
        text
    }
}

/// Reads a `.fam` file and records its path and SHA-256 under `key`.
pub fn load_family(report: &mut Report, key: &str, path: &Path) -> Result<Family> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let family = parse_family_bytes(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    report.input(key, json!({ "path": path.display().to_string(), "sha256": digest }));
    Ok(family)
}

pub fn write_family(path: &Path, family: &Family) -> Result<()> {
    std::fs::write(path, serialize_family(family)).with_context(|| format!("writing {}", path.display()))
}

/// `PREFIX.left.fam` / `PREFIX.right.fam`.
pub fn pair_paths(prefix: &Path) -> (PathBuf, PathBuf) {
    let with = |suffix: &str| {
        let mut name = prefix.as_os_str().to_owned();
        name.push(suffix);
        PathBuf::from(name)
    };
    (with(".left.fam"), with(".right.fam"))
}
