//! Artifact writing, float formatting and the run manifest.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

/// Fixed 15-significant-digit form used in CSV files: positional notation for
/// decimal exponents in `-5..15`, scientific otherwise.
pub fn format_sig15(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let sci = format!("{x:.14e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).expect("scientific float");
    if (-5..15).contains(&exp) {
        format!("{x:.*}", (14 - exp) as usize)
    } else {
        sci
    }
}

/// Pretty JSON with a trailing newline. Floats use the shortest round-trip form.
pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_echo: Value,
    pub artifact_paths: Vec<String>,
    pub timestamp: String,
    pub engine_version: String,
}

pub const MANIFEST_NAME: &str = "manifest.json";

/// Where a command's artifacts go. Without `--out` the artifact is printed and
/// no manifest is written. An `--out` path with an extension names the file
/// itself; otherwise it is a directory and the command's default name is used.
pub struct Sink {
    out: Option<PathBuf>,
    written: Vec<PathBuf>,
}

impl Sink {
    pub fn new(out: Option<PathBuf>) -> Self {
        Sink { out, written: Vec::new() }
    }

    fn target(&self, default_name: &str) -> Option<PathBuf> {
        let out = self.out.as_ref()?;
        Some(if out.extension().is_some() { out.clone() } else { out.join(default_name) })
    }

    pub fn emit(&mut self, default_name: &str, content: &str) -> Result<()> {
        match self.target(default_name) {
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(content.as_bytes())?;
                stdout.flush()?;
            }
            Some(path) => {
                if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir)?;
                }
                std::fs::write(&path, content)?;
                self.written.push(path);
            }
        }
        Ok(())
    }

    /// Writes the manifest next to the artifacts. Must be the last write.
    pub fn finish(self, command: &str, config_echo: Value) -> Result<Option<PathBuf>> {
        let Some(first) = self.written.first() else {
            return Ok(None);
        };
        let dir = first.parent().map(Path::to_path_buf).unwrap_or_default();
        let manifest = RunManifest {
            command: command.into(),
            config_echo,
            artifact_paths: self.written.iter().map(|p| p.display().to_string()).collect(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            engine_version: env!("CARGO_PKG_VERSION").into(),
        };
        let path = dir.join(MANIFEST_NAME);
        std::fs::write(&path, to_json(&manifest)?)?;
        Ok(Some(path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(format_sig15(-1.125), "-1.12500000000000");
        assert_eq!(format_sig15(0.5), "0.500000000000000");
        assert_eq!(format_sig15(-0.0), "0.00000000000000");
        assert_eq!(format_sig15(-0.0214466094067262), "-0.0214466094067262");
        assert_eq!(format_sig15(1e-7), "1.00000000000000e-7");
        assert_eq!(format_sig15(9.9999999999999999), "10.0000000000000");
        assert_eq!(format_sig15(123456.0), "123456.000000000");
    }
}
