//! Flat `KEY = VALUE` configuration: optional file, repeatable `--set`
//! overrides (later wins), strict unknown-key rejection, typed getters.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

/// A CLI failure carrying its process exit code.
///
/// `Validation` (exit 1) covers bad usage and ill-formed or out-of-range
/// configuration; `Numerical` (exit 3) covers anomalies reported by a
/// computation that started from a valid configuration. Verification
/// failures exit with 2 but are plain results, not errors.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) => write!(f, "error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical anomaly: {msg}"),
        }
    }
}

/// One accepted configuration key with its default value and description.
pub struct KeySpec {
    pub key: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

/// Effective key-value configuration of one invocation.
pub struct ScenarioConfig {
    values: BTreeMap<String, String>,
    pub seed: u64,
}

impl ScenarioConfig {
    /// Reads the optional config file, then applies `--set` pairs in order.
    pub fn load(path: Option<&Path>, sets: &[String], seed: u64) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Validation(format!("cannot read {}: {e}", path.display()))
            })?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = split_pair(line).ok_or_else(|| {
                    CliError::Validation(format!(
                        "{}:{}: expected KEY = VALUE, got '{line}'",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                values.insert(key, value);
            }
        }
        for set in sets {
            let (key, value) = split_pair(set).ok_or_else(|| {
                CliError::Validation(format!("--set expects KEY=VALUE, got '{set}'"))
            })?;
            values.insert(key, value);
        }
        Ok(Self { values, seed })
    }

    /// Rejects keys outside `keys`, then fills missing ones with defaults.
    pub fn finalize(&mut self, keys: &[KeySpec]) -> Result<(), CliError> {
        for key in self.values.keys() {
            if !keys.iter().any(|spec| spec.key == key) {
                let known: Vec<&str> = keys.iter().map(|spec| spec.key).collect();
                let known = if known.is_empty() { "none".to_string() } else { known.join(", ") };
                return Err(CliError::Validation(format!(
                    "unknown configuration key '{key}' (accepted: {known})"
                )));
            }
        }
        for spec in keys {
            self.values
                .entry(spec.key.to_string())
                .or_insert_with(|| spec.default.to_string());
        }
        Ok(())
    }

    /// All effective entries in sorted key order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    fn raw(&self, key: &str) -> Result<&str, CliError> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::Validation(format!("missing configuration key '{key}'")))
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        let raw = self.raw(key)?;
        raw.parse()
            .map_err(|_| CliError::Validation(format!("key '{key}': expected a number, got '{raw}'")))
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        let raw = self.raw(key)?;
        raw.parse().map_err(|_| {
            CliError::Validation(format!("key '{key}': expected a whole number, got '{raw}'"))
        })
    }

    /// Like [`ScenarioConfig::usize`] but the literal `auto` means `auto`.
    pub fn usize_or_auto(&self, key: &str, auto: usize) -> Result<usize, CliError> {
        if self.raw(key)? == "auto" {
            return Ok(auto);
        }
        self.usize(key)
    }

    pub fn flag(&self, key: &str) -> Result<bool, CliError> {
        match self.raw(key)? {
            "true" | "1" => Ok(true),
            "false" | "0" => Ok(false),
            other => Err(CliError::Validation(format!(
                "key '{key}': expected true or false, got '{other}'"
            ))),
        }
    }
}

fn split_pair(text: &str) -> Option<(String, String)> {
    let (key, value) = text.split_once('=')?;
    let key = key.trim();
    if key.is_empty() {
        return None;
    }
    Some((key.to_string(), value.trim().to_string()))
}
