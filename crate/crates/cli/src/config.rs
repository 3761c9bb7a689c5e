//! `key = value` run files. Keys are long flag names; `experiment` names the
//! subcommand. Boolean flags take `true` or `false`.

use std::path::Path;

use crate::args::SUBCOMMANDS;

#[derive(Debug, Clone, PartialEq)]
pub struct RunFile {
    pub experiment: Option<String>,
    pub entries: Vec<(String, String)>,
}

pub fn parse(text: &str) -> Result<RunFile, String> {
    let mut experiment = None;
    let mut entries = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected `key = value`, got {raw:?}", no + 1))?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(format!("config line {}: empty key", no + 1));
        }
        match key {
            "experiment" => experiment = Some(value.to_string()),
            "config" => return Err(format!("config line {}: nested config files are not supported", no + 1)),
            _ => entries.push((key.to_string(), value.to_string())),
        }
    }
    Ok(RunFile { experiment, entries })
}

pub fn load(path: &Path) -> Result<RunFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse(&text)
}

fn config_path(argv: &[String]) -> Option<String> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Rebuilds `argv` as `prog subcommand <file flags> <command-line flags>` so
/// that later command-line occurrences override the file.
pub fn expand(argv: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let file = load(Path::new(&path))?;
    let mut rest: Vec<String> = argv.into_iter().collect();
    let prog = rest.remove(0);
    let sub = match rest.iter().position(|a| SUBCOMMANDS.contains(&a.as_str())) {
        Some(i) => rest.remove(i),
        None => file
            .experiment
            .clone()
            .ok_or_else(|| "no subcommand given on the command line or as `experiment` in the config".to_string())?,
    };
    let mut out = vec![prog, sub];
    for (k, v) in file.entries {
        match v.as_str() {
            "true" => out.push(format!("--{k}")),
            "false" => {}
            _ => {
                out.push(format!("--{k}"));
                out.push(v);
            }
        }
    }
    out.extend(rest);
    Ok(out)
}
