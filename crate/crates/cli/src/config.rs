//! Plain-text `key = value` config files.
//!
//! Each key is a long flag name of the chosen subcommand (or a global flag).
//! Entries are spliced into the argument vector right after the subcommand,
//! ahead of the user's own flags, so flags given on the command line win.
//! `key = true` becomes a bare switch and `key = false` is dropped. Blank
//! lines and lines starting with `#` are ignored.

use std::path::Path;

use crate::{CliError, CliResult};

const SUBCOMMANDS: [&str; 7] = ["gen", "exact", "saw", "couple", "scan", "certify", "cutwidth"];

pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::invalid(format!("config line {}: expected key = value", i + 1)))?;
        let key = k.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(CliError::invalid(format!("config line {}: empty key", i + 1)));
        }
        out.push((key.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn config_tokens(path: &Path) -> CliResult<Vec<String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read config {}: {e}", path.display())))?;
    let mut tokens = Vec::new();
    for (k, v) in parse_config(&text)? {
        if k == "config" {
            return Err(CliError::invalid("config files cannot include other config files"));
        }
        match v.as_str() {
            "true" => tokens.push(format!("--{k}")),
            "false" => {}
            _ => {
                tokens.push(format!("--{k}"));
                // multi-valued options are written space-separated in the file
                tokens.extend(v.split_whitespace().map(str::to_string));
            }
        }
    }
    Ok(tokens)
}

/// Returns `argv` with the entries of `--config FILE` (if present) inserted.
pub fn merge_config(argv: Vec<String>) -> CliResult<Vec<String>> {
    let mut path = None;
    for (i, a) in argv.iter().enumerate() {
        if a == "--config" {
            path = argv.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(argv);
    };
    let tokens = config_tokens(Path::new(&path))?;
    let pos = argv.iter().position(|a| SUBCOMMANDS.contains(&a.as_str())).map_or(argv.len(), |p| p + 1);
    let mut merged = argv[..pos].to_vec();
    merged.extend(tokens);
    merged.extend_from_slice(&argv[pos..]);
    Ok(merged)
}
