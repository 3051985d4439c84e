//! Run manifests: flat `key = value` text written beside every output.
//!
//! Keys are unique and kept in insertion order. Values are single-line
//! strings with surrounding whitespace trimmed. Lines starting with `#`
//! are comments.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Keys that vary between otherwise identical runs.
pub const VOLATILE_KEYS: [&str; 2] = ["started_at", "finished_at"];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `key`, replacing an earlier value in place.
    pub fn set(&mut self, key: &str, value: impl ToString) -> Result<()> {
        let value = value.to_string();
        if key.is_empty() || key.contains(['=', '\n']) || key.trim() != key || key.starts_with('#') {
            return Err(Error::InvalidConfig(format!("bad manifest key '{key}'")));
        }
        if value.contains('\n') || value.trim() != value {
            return Err(Error::InvalidConfig(format!("bad manifest value for '{key}'")));
        }
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Entries under `prefix.`, with the prefix stripped.
    pub fn section<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a str)> + 'a {
        self.entries().filter_map(move |(k, v)| {
            k.strip_prefix(prefix)
                .and_then(|rest| rest.strip_prefix('.'))
                .map(|rest| (rest, v))
        })
    }

    /// The manifest without timestamps, for reproducibility comparisons.
    pub fn without_volatile(&self) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| !VOLATILE_KEYS.contains(&k.as_str()))
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for Manifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Manifest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut m = Manifest::new();
        for (i, line) in s.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse { row: i + 1, message };
            let (k, v) = trimmed
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected 'key = value', found '{trimmed}'")))?;
            let key = k.trim();
            if m.get(key).is_some() {
                return Err(parse_err(format!("duplicate key '{key}'")));
            }
            m.set(key, v.trim()).map_err(|e| parse_err(e.to_string()))?;
        }
        Ok(m)
    }
}
