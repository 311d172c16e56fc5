use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context as _, Result};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub diagnostics: Vec<String>,
    pub seed: u64,
    pub version: String,
    /// Files written next to the report, relative to the output directory.
    pub artifacts: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, results: Value, diagnostics: Vec<String>, seed: u64) -> Self {
        RunReport {
            command: command.to_string(),
            inputs,
            results,
            diagnostics,
            seed,
            version: concat!("lgmirror ", env!("CARGO_PKG_VERSION")).to_string(),
            artifacts: Vec::new(),
        }
    }
}

pub struct Writer {
    dir: PathBuf,
    written: Vec<String>,
}

impl Writer {
    pub fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Writer { dir: dir.to_path_buf(), written: Vec::new() })
    }

    pub fn file(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(name.to_string());
        Ok(())
    }

    /// Writes `<command>.json` and returns the report.
    pub fn finish(mut self, mut report: RunReport) -> Result<RunReport> {
        report.artifacts = self.written.clone();
        let name = format!("{}.json", report.command);
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        self.file(&name, &text)?;
        println!("{}", self.dir.join(&name).display());
        Ok(report)
    }
}
