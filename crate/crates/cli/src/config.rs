//! Flat `key = value` run files. Keys are the long flag names of the
//! subcommand (plus `command`, `threads`, `out-dir`, `sequential`); command-line
//! flags given explicitly take precedence.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgAction, Command};

/// Global keys that precede the subcommand on the command line.
pub const GLOBAL_KEYS: &[&str] = &["threads", "out-dir", "sequential"];

#[derive(Debug, Default, Clone, PartialEq)]
pub struct RunFile {
    pub command: Option<String>,
    /// Key to values in file order; repeated keys accumulate.
    pub entries: BTreeMap<String, Vec<String>>,
}

pub fn parse(text: &str) -> Result<RunFile> {
    let mut out = RunFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| anyhow!("line {}: expected key = value, got '{raw}'", i + 1))?;
        let (k, v) = (k.trim().replace('_', "-"), v.trim().to_string());
        if k.is_empty() {
            bail!("line {}: empty key", i + 1);
        }
        if k == "command" {
            if out.command.replace(v).is_some() {
                bail!("line {}: command given twice", i + 1);
            }
        } else {
            out.entries.entry(k).or_default().push(v);
        }
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<RunFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    parse(&text).with_context(|| format!("in config {}", path.display()))
}

/// Arguments split by position: before and after the subcommand name.
#[derive(Debug, Default, PartialEq)]
pub struct Injected {
    pub global: Vec<String>,
    pub local: Vec<String>,
}

/// Converts the file entries into flag tokens, rejecting keys that `sub`
/// does not define. Keys present in `explicit` are dropped so the command
/// line wins.
pub fn to_args(file: &RunFile, root: &Command, sub: &str, explicit: &[String]) -> Result<Injected> {
    let cmd = root.find_subcommand(sub).ok_or_else(|| anyhow!("unknown command '{sub}'"))?;
    let mut out = Injected::default();
    for (key, values) in &file.entries {
        if explicit.iter().any(|e| e == key) {
            continue;
        }
        let (owner, target) = if GLOBAL_KEYS.contains(&key.as_str()) { (root, &mut out.global) } else { (cmd, &mut out.local) };
        let arg = owner
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
            .ok_or_else(|| anyhow!("unknown config key '{key}' for command '{sub}'"))?;
        let is_switch = matches!(arg.get_action(), ArgAction::SetTrue);
        for v in values {
            if is_switch {
                match v.as_str() {
                    "true" => target.push(format!("--{key}")),
                    "false" => {}
                    _ => bail!("config key '{key}' expects true or false, got '{v}'"),
                }
            } else {
                target.push(format!("--{key}"));
                target.push(v.clone());
            }
        }
    }
    Ok(out)
}
