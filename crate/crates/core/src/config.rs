//! Run settings from an optional TOML file; command-line flags override them.

use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    /// Precision budget for every certified computation, in bits.
    pub max_bits: u32,
    /// Largest word list enumerated per cover level.
    pub enumeration_cap: u64,
    /// Largest candidate count for the pairwise block filter.
    pub filter_cap: u64,
    /// Default output tolerance `2^-tol_bits`.
    pub tol_bits: u32,
    /// Worker threads; `None` lets the pool decide.
    pub threads: Option<usize>,
}

impl Default for Settings {
    fn default() -> Self {
        Self { max_bits: 4096, enumeration_cap: 2_000_000, filter_cap: 10_000_000, tol_bits: 60, threads: None }
    }
}

fn as_u64(key: &str, v: &toml::Value) -> Result<u64> {
    v.as_integer()
        .filter(|&i| i > 0)
        .map(|i| i as u64)
        .ok_or_else(|| Error::Config(format!("`{key}` must be a positive integer")))
}

impl Settings {
    /// Parses settings text. Unknown keys are returned as warnings.
    pub fn parse(text: &str) -> Result<(Settings, Vec<String>)> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
        let mut s = Settings::default();
        let mut warnings = Vec::new();
        for (key, v) in &table {
            match key.as_str() {
                "max_bits" => s.max_bits = as_u64(key, v)?.min(u32::MAX as u64) as u32,
                "enumeration_cap" => s.enumeration_cap = as_u64(key, v)?,
                "filter_cap" => s.filter_cap = as_u64(key, v)?,
                "tol_bits" => s.tol_bits = as_u64(key, v)?.min(u32::MAX as u64) as u32,
                "threads" => s.threads = Some(as_u64(key, v)? as usize),
                _ => warnings.push(format!("unknown setting `{key}` ignored")),
            }
        }
        Ok((s, warnings))
    }

    /// Loads `path`; a missing file gives the defaults.
    pub fn load(path: &Path) -> Result<(Settings, Vec<String>)> {
        match std::fs::read_to_string(path) {
            Ok(text) => Settings::parse(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok((Settings::default(), Vec::new())),
            Err(e) => Err(Error::Config(format!("{}: {e}", path.display()))),
        }
    }
}
