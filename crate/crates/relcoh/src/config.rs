//! JSON config files whose keys mirror the long flag names.
//!
//! A config is a flat object. Keys may use `-` or `_`, values may be strings,
//! numbers, booleans or arrays (joined with commas). Flags given on the command
//! line take precedence over the file.

use std::fs;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default)]
pub struct Config {
    entries: Map<String, Value>,
}

fn normalize(key: &str) -> String {
    key.replace('_', "-")
}

fn render(v: &Value) -> Option<String> {
    match v {
        Value::Null => None,
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => Some(items.iter().filter_map(render).collect::<Vec<_>>().join(",")),
        other => Some(other.to_string()),
    }
}

impl Config {
    pub fn from_json(text: &str, allowed: &[&str]) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::usage(format!("config: {e}")))?;
        let Value::Object(raw) = value else {
            return Err(CliError::usage("config: expected a JSON object"));
        };
        let mut entries = Map::new();
        for (k, v) in raw {
            let key = normalize(&k);
            if key == "config" || !allowed.contains(&key.as_str()) {
                return Err(CliError::usage(format!("config: unknown key `{k}`")));
            }
            entries.insert(key, v);
        }
        Ok(Self { entries })
    }

    pub fn load(path: Option<&Path>, allowed: &[&str]) -> Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
                Self::from_json(&text, allowed)
            }
        }
    }

    /// The flag value if present, else the config value.
    pub fn pick(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.entries.get(key).and_then(render))
    }

    pub fn flag(&self, flag: bool, key: &str) -> Result<bool> {
        if flag {
            return Ok(true);
        }
        match self.entries.get(key) {
            None | Some(Value::Null) => Ok(false),
            Some(Value::Bool(b)) => Ok(*b),
            Some(other) => Err(CliError::usage(format!("config: `{key}` must be a boolean, got {other}"))),
        }
    }
}
