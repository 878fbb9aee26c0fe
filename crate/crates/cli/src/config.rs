//! Layering of command-line flags over a TOML config file.
//!
//! The file holds one table per subcommand (`[hydra]`, `[pool]`, ...) whose
//! keys are the long flag names; `workers` may also sit at the top level.
//! A flag given on the command line wins over the file; anything left unset
//! falls back to the built-in default.

use std::path::Path;

use anyhow::{bail, Context};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::UsageError;

pub fn load(path: &Path) -> anyhow::Result<toml::Table> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse::<toml::Table>()
        .with_context(|| format!("parsing {}", path.display()))
}

pub fn top_level_workers(table: &toml::Table) -> anyhow::Result<Option<usize>> {
    match table.get("workers") {
        None => Ok(None),
        Some(toml::Value::Integer(w)) if *w > 0 => Ok(Some(*w as usize)),
        Some(other) => bail!(UsageError(format!(
            "workers must be a positive integer, got {other}"
        ))),
    }
}

fn is_unset(v: &Value) -> bool {
    match v {
        Value::Null | Value::Bool(false) => true,
        Value::Array(a) => a.is_empty(),
        _ => false,
    }
}

/// Fills every unset field of `args` from `table[section]`.
pub fn merge<T: Serialize + DeserializeOwned>(
    args: T,
    table: Option<&toml::Table>,
    section: &str,
) -> anyhow::Result<T> {
    let Some(file) = table.and_then(|t| t.get(section)) else {
        return Ok(args);
    };
    let toml::Value::Table(file) = file else {
        bail!(UsageError(format!(
            "config entry [{section}] must be a table"
        )));
    };
    let mut merged = serde_json::to_value(&args)?;
    let fields = merged
        .as_object_mut()
        .expect("argument structs serialize to objects");
    for (key, value) in file {
        let key = key.replace('_', "-");
        let Some(slot) = fields.get_mut(&key) else {
            bail!(UsageError(format!(
                "unknown key {key:?} in config section [{section}]"
            )));
        };
        if is_unset(slot) {
            *slot = serde_json::to_value(value)?;
        }
    }
    serde_json::from_value(merged)
        .map_err(|e| UsageError(format!("config section [{section}]: {e}")).into())
}
