//! File output: atomic writes, CSV formatting, run manifests.

use crate::CliError;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Environment variable overriding the table cache directory.
pub const CACHE_ENV: &str = "FIXPUR_CACHE_DIR";

/// Default cache directory (relative to the working directory).
pub const DEFAULT_CACHE_DIR: &str = ".cache";

/// Cache directory from the environment or the default.
pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

/// Hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes `bytes` to `path` through a sibling temporary file and a rename,
/// so readers never observe a partially written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.tmp-{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// 17-significant-digit float formatting for CSV cells.
pub fn f17(v: f64) -> String {
    fixpur::cdf::table::fmt17(v)
}

/// Incrementally built RFC-4180 CSV (CRLF line endings, header row).
#[derive(Debug)]
pub struct Csv {
    text: String,
    width: usize,
}

impl Csv {
    /// Starts a CSV with the given header.
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push_str("\r\n");
        Self {
            text,
            width: header.len(),
        }
    }

    /// Appends a row of pre-formatted cells.
    pub fn row(&mut self, cells: &[String]) {
        debug_assert_eq!(cells.len(), self.width);
        self.text.push_str(&cells.join(","));
        self.text.push_str("\r\n");
    }

    /// Appends a row of floats.
    pub fn floats(&mut self, cells: &[f64]) {
        let v: Vec<String> = cells.iter().map(|&x| f17(x)).collect();
        self.row(&v);
    }

    /// Final text.
    pub fn into_string(self) -> String {
        self.text
    }
}

/// One output file listed in a manifest.
#[derive(Debug, Clone, Serialize)]
pub struct OutputEntry {
    /// File name relative to the output directory.
    pub path: String,
    /// Hex SHA-256 of the content.
    pub sha256: String,
    /// Size in bytes.
    pub bytes: usize,
}

/// Record of one CLI run.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    /// Command line as invoked.
    pub command: Vec<String>,
    /// Parsed configuration.
    pub config: serde_json::Value,
    /// Library version.
    pub library_version: String,
    /// Wall-clock duration of the run in seconds.
    pub wall_clock_seconds: f64,
    /// Every file written, with digests.
    pub outputs: Vec<OutputEntry>,
}

/// Collects outputs of one command and writes its manifest at the end.
#[derive(Debug)]
pub struct Run {
    name: String,
    out_dir: PathBuf,
    config: serde_json::Value,
    started: Instant,
    outputs: Vec<OutputEntry>,
}

impl Run {
    /// Starts a run writing into `out_dir`.
    pub fn new(name: &str, out_dir: &Path, config: &impl Serialize) -> Self {
        Self {
            name: name.to_string(),
            out_dir: out_dir.to_path_buf(),
            config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
            started: Instant::now(),
            outputs: Vec::new(),
        }
    }

    /// Writes one output file (relative name) and records its digest.
    pub fn write(&mut self, name: &str, content: &[u8]) -> Result<PathBuf, CliError> {
        let path = self.out_dir.join(name);
        write_atomic(&path, content)?;
        self.outputs.push(OutputEntry {
            path: name.to_string(),
            sha256: sha256_hex(content),
            bytes: content.len(),
        });
        Ok(path)
    }

    /// Writes `manifest-<command>.json` and returns its path.
    pub fn finish(self) -> Result<PathBuf, CliError> {
        let manifest = RunManifest {
            command: std::env::args().collect(),
            config: self.config,
            library_version: fixpur::VERSION.to_string(),
            wall_clock_seconds: self.started.elapsed().as_secs_f64(),
            outputs: self.outputs,
        };
        let path = self.out_dir.join(format!("manifest-{}.json", self.name));
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
        write_atomic(&path, text.as_bytes())?;
        Ok(path)
    }
}

/// Compact, file-name-safe rendering of a float (`0.99` → `0.99`).
pub fn tag(v: f64) -> String {
    format!("{v}")
}
