//! Budgets and paths from the config file and command-line overrides.
//!
//! The config file is flat `key = value` text. `#` starts a comment and
//! string values may be quoted, so a one-table TOML file also parses.

use std::path::{Path, PathBuf};

use untwist::Budgets;

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FileConfig {
    pub budgets: Budgets,
    pub cache_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
}

fn number<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.replace('_', "")
        .parse()
        .map_err(|_| CliError::Usage(format!("config key `{key}`: `{v}` is not a non-negative integer")))
}

pub fn parse_config(text: &str) -> Result<FileConfig, CliError> {
    let mut cfg = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with('[') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", lineno + 1)))?;
        let key = key.trim();
        let value = value.trim().trim_matches('"');
        let b = &mut cfg.budgets;
        match key {
            "order_cap" => b.order_cap = number(key, value)?,
            "table_cap" => b.table_cap = number(key, value)?,
            "orbit_cap" => b.orbit_cap = number(key, value)?,
            "count_cap" => b.count_cap = number(key, value)?,
            "bar_cells" => b.bar_cells = number(key, value)?,
            "class_enum_cap" => b.class_enum_cap = number(key, value)?,
            "cache_dir" => cfg.cache_dir = Some(PathBuf::from(value)),
            "jobs" => cfg.jobs = Some(number(key, value)?),
            _ => return Err(CliError::Usage(format!("config line {}: unknown key `{key}`", lineno + 1))),
        }
    }
    Ok(cfg)
}

pub fn load_config(path: Option<&Path>) -> Result<FileConfig, CliError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            parse_config(&text)
        }
    }
}

/// `$XDG_CACHE_HOME/untwist`, else `~/.cache/untwist`.
pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|x| !x.is_empty()) {
        return Some(PathBuf::from(x).join("untwist"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("untwist"))
}
