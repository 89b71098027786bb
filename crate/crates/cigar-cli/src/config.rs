//! `--config file.json`: a flat JSON object whose keys name flags of the
//! chosen subcommand. Flags given on the command line win.

use serde_json::Value;

use crate::error::{CliError, CliResult};

fn flag_present(argv: &[String], flag: &str) -> bool {
    argv.iter().any(|a| a == flag || a.starts_with(&format!("{flag}=")))
}

fn config_path(argv: &[String]) -> CliResult<Option<String>> {
    for (i, a) in argv.iter().enumerate() {
        if a == "--config" {
            return argv
                .get(i + 1)
                .cloned()
                .map(Some)
                .ok_or_else(|| CliError::usage("--config", "missing file path"));
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Ok(Some(p.to_string()));
        }
    }
    Ok(None)
}

fn scalar(v: &Value, key: &str) -> CliResult<String> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        _ => Err(CliError::usage("--config", format!("key {key:?} must hold a number, string or list of those"))),
    }
}

/// Returns argv with the config entries not already given appended as flags.
pub fn merge(argv: Vec<String>) -> CliResult<Vec<String>> {
    let Some(path) = config_path(&argv)? else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::usage("--config", format!("{path}: {e}")))?;
    let parsed: Value = serde_json::from_str(&text).map_err(|e| CliError::usage("--config", format!("{path}: {e}")))?;
    let Value::Object(map) = parsed else {
        return Err(CliError::usage("--config", "expected a JSON object"));
    };
    let mut out = argv.clone();
    for (key, v) in &map {
        let flag = format!("--{}", key.replace('_', "-"));
        if flag == "--config" || flag_present(&argv, &flag) {
            continue;
        }
        match v {
            Value::Bool(true) => out.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let parts = items.iter().map(|i| scalar(i, key)).collect::<CliResult<Vec<_>>>()?;
                out.push(flag);
                out.push(parts.join(","));
            }
            other => {
                out.push(flag);
                out.push(scalar(other, key)?);
            }
        }
    }
    Ok(out)
}
