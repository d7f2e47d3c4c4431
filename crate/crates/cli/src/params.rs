//! Parameter documents: defaults, overlaid by the `--json` file, then by `--set` pairs.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::{config, CliError, CliResult, Global};

/// Loads `T` starting from its defaults. Keys unknown to `T` are rejected.
pub fn load<T: Serialize + DeserializeOwned + Default>(g: &Global) -> CliResult<T> {
    load_with(g, T::default(), &[])
}

/// As [`load`], starting from `base` and applying `extra` overrides last.
pub fn load_with<T: Serialize + DeserializeOwned>(g: &Global, base: T, extra: &[(String, Value)]) -> CliResult<T> {
    let mut doc = match serde_json::to_value(&base).map_err(|e| CliError::Runtime(e.to_string()))? {
        Value::Object(m) => m,
        _ => return config("parameter type is not an object"),
    };
    let known: Vec<String> = doc.keys().cloned().collect();
    let apply = |key: &str, value: Value, doc: &mut Map<String, Value>| -> CliResult<()> {
        if !known.iter().any(|k| k == key) {
            return config(format!("unknown parameter `{key}`; expected one of: {}", known.join(", ")));
        }
        doc.insert(key.to_string(), value);
        Ok(())
    };
    if let Some(path) = &g.json {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        match serde_json::from_str::<Value>(&text) {
            Ok(Value::Object(m)) => {
                for (k, v) in m {
                    apply(&k, v, &mut doc)?;
                }
            }
            Ok(_) => return config("parameter document must be a JSON object"),
            Err(e) => return config(format!("invalid JSON in {}: {e}", path.display())),
        }
    }
    for pair in &g.set {
        let (k, v) = parse_pair(pair)?;
        apply(&k, v, &mut doc)?;
    }
    for (k, v) in extra {
        apply(k, v.clone(), &mut doc)?;
    }
    serde_json::from_value(Value::Object(doc)).map_err(|e| CliError::Config(format!("invalid parameters: {e}")))
}

pub fn parse_pair(pair: &str) -> CliResult<(String, Value)> {
    let Some((k, v)) = pair.split_once('=') else {
        return config(format!("expected key=value, got `{pair}`"));
    };
    let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
    Ok((k.trim().to_string(), value))
}

/// Comma- or space-separated unsigned integers.
pub fn parse_list(s: &str) -> CliResult<Vec<u32>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Config(format!("`{t}` is not a non-negative integer"))))
        .collect()
}

/// A grid as `a,b,c` or `start:stop:step` (inclusive of `stop` within rounding).
pub fn parse_grid(s: &str) -> CliResult<Vec<f64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let bad = |t: &str| CliError::Config(format!("`{t}` is not a number"));
    if s.contains(':') {
        let parts: Vec<f64> = s.split(':').map(|t| t.trim().parse::<f64>().map_err(|_| bad(t))).collect::<CliResult<_>>()?;
        let [start, stop, step] = parts[..] else {
            return config("range grid needs start:stop:step");
        };
        if step <= 0.0 {
            return config("grid step must be positive");
        }
        let count = ((stop - start) / step + 1e-9).floor();
        if count < 0.0 {
            return Ok(Vec::new());
        }
        return Ok((0..=count as usize).map(|i| start + i as f64 * step).collect());
    }
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad(t))).collect()
}
