//! Report emission. Every table starts with a `# config_hash=<hash>` line;
//! writing to a file that already carries the same hash leaves it untouched.

use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;

/// Hash for runs driven by input files rather than an experiment config:
/// first 16 hex digits of the SHA-256 over the experiment name and each part.
pub fn input_hash(experiment: &str, parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    h.update(experiment.as_bytes());
    for part in parts {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part);
    }
    hex::encode(h.finalize())[..16].to_string()
}

/// CSV text with the hash comment line, a header row and one row per item.
pub fn csv_string<T: Serialize>(hash: &str, rows: &[T]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(true)
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)
        .expect("csv output of serde rows is UTF-8");
    Ok(format!("# config_hash={hash}\n{body}"))
}

/// Pretty JSON wrapped as `{"config_hash": ..., "report": ...}`.
pub fn json_string<T: Serialize>(hash: &str, report: &T) -> Result<String> {
    #[derive(Serialize)]
    struct Envelope<'a, T> {
        config_hash: &'a str,
        report: &'a T,
    }
    let mut s = serde_json::to_string_pretty(&Envelope {
        config_hash: hash,
        report,
    })?;
    s.push('\n');
    Ok(s)
}

fn existing_hash(path: &Path) -> Option<String> {
    let text = fs::read_to_string(path).ok()?;
    let first = text.lines().next()?;
    if let Some(h) = first.strip_prefix("# config_hash=") {
        return Some(h.to_string());
    }
    let v: serde_json::Value = serde_json::from_str(&text).ok()?;
    v.get("config_hash")?.as_str().map(str::to_string)
}

/// Writes `contents` to `path` unless it already holds output for `hash`.
/// Returns whether anything was written.
pub fn emit(path: &Path, hash: &str, contents: &str) -> Result<bool> {
    if existing_hash(path).as_deref() == Some(hash) {
        return Ok(false);
    }
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)?;
    Ok(true)
}
