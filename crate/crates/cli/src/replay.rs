//! Re-runs a manifest and compares the fresh result with the recorded one:
//! exact fields must be identical, Ball fields must overlap.

use crate::args::ReplayArgs;
use crate::commands::Outcome;
use crate::error::{usage, CliError};
use crate::json as enc;
use serde_json::{json, Map, Value};

/// Command line reconstructed from a manifest.
pub fn argv_of(manifest: &Value) -> Result<Vec<String>, CliError> {
    let command = manifest["command"].as_str().ok_or_else(|| usage("manifest has no command"))?;
    if command == "replay" {
        return Err(usage("cannot replay a replay"));
    }
    let params = manifest["params"].as_object().ok_or_else(|| usage("manifest has no params"))?;
    let mut argv = vec!["powseq".to_string()];
    if let Some(p) = manifest["precision"]["initial_bits"].as_u64() {
        argv.extend(["--precision".into(), p.to_string()]);
    }
    if let Some(p) = manifest["precision"]["max_bits"].as_u64() {
        argv.extend(["--max-precision".into(), p.to_string()]);
    }
    argv.push(command.to_string());
    for (k, v) in params {
        let v = v.as_str().ok_or_else(|| usage(format!("parameter {k} is not a string")))?;
        argv.push(format!("--{k}={v}"));
    }
    Ok(argv)
}

fn compare(old: &Value, new: &Value, path: &str, out: &mut Vec<String>) {
    if enc::is_ball(old) && enc::is_ball(new) {
        match (enc::parse_ball(old), enc::parse_ball(new)) {
            (Some((a, b)), Some((c, d))) if a <= d && c <= b => {}
            _ => out.push(path.to_string()),
        }
        return;
    }
    match (old, new) {
        (Value::Object(a), Value::Object(b)) => {
            if a.len() != b.len() || a.keys().any(|k| !b.contains_key(k)) {
                out.push(path.to_string());
                return;
            }
            for (k, v) in a {
                compare(v, &b[k], &format!("{path}/{k}"), out);
            }
        }
        (Value::Array(a), Value::Array(b)) => {
            if a.len() != b.len() {
                out.push(path.to_string());
                return;
            }
            for (i, (x, y)) in a.iter().zip(b).enumerate() {
                compare(x, y, &format!("{path}/{i}"), out);
            }
        }
        _ => {
            if old != new {
                out.push(path.to_string());
            }
        }
    }
}

/// Mismatching JSON-pointer paths between two result objects.
pub fn mismatches(old: &Value, new: &Value) -> Vec<String> {
    let mut out = Vec::new();
    compare(old, new, "", &mut out);
    out
}

pub fn replay_cmd(a: &ReplayArgs) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(&a.manifest)
        .map_err(|e| usage(format!("cannot read {}: {e}", a.manifest.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| usage(format!("invalid JSON: {e}")))?;
    let manifest = if doc.get("manifest").is_some() { &doc["manifest"] } else { &doc };
    let argv = argv_of(manifest)?;
    let run = crate::run(argv);
    if run.code != 0 {
        let msg = format!("replayed command failed: {}", run.stderr.trim());
        return Err(match run.code {
            2 => CliError::Usage(msg),
            3 => CliError::Precision(msg),
            _ => CliError::Domain(msg),
        });
    }
    let fresh: Value = serde_json::from_str(&run.stdout).expect("run emits JSON");
    let recorded = doc.get("result");
    let diff = recorded.map(|r| mismatches(r, &fresh["result"]));
    let matches = diff.as_ref().map(Vec::is_empty);
    let mut params = Map::new();
    params.insert("manifest".into(), Value::String(a.manifest.display().to_string()));
    Ok(Outcome {
        params,
        certificates: vec![json!({
            "name": "replay_match",
            "holds": matches.unwrap_or(true),
            "detail": {"compared": recorded.is_some()},
        })],
        table: None,
        result: json!({
            "replayed_command": manifest["command"],
            "matches": matches,
            "mismatches": diff.unwrap_or_default(),
            "result": fresh["result"],
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_fields_compare_by_overlap() {
        let a = json!({"x": {"center": "1.0", "radius": "1.0e-1", "precision_bits": 64}, "k": 3});
        let b = json!({"x": {"center": "1.15", "radius": "1.0e-1", "precision_bits": 128}, "k": 3});
        let c = json!({"x": {"center": "1.3", "radius": "1.0e-1", "precision_bits": 128}, "k": 3});
        assert!(mismatches(&a, &b).is_empty());
        assert_eq!(mismatches(&a, &c), vec!["/x".to_string()]);
        let d = json!({"x": {"center": "1.0", "radius": "1.0e-1", "precision_bits": 64}, "k": 4});
        assert_eq!(mismatches(&a, &d), vec!["/k".to_string()]);
    }
}
