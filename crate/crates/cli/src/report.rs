use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::CliError;

pub const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+", env!("BUILD_HASH"));

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    /// "ok", "failed" (verify only) or "error".
    pub status: String,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Value>,
    pub version: String,
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(k, x)| flatten(&join(&k.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// One `path,value` row per scalar of the report.
    pub fn to_csv(&self) -> String {
        let mut rows = Vec::new();
        flatten("", &serde_json::to_value(self).expect("reports serialize"), &mut rows);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["path", "value"]).unwrap();
        for (k, v) in rows {
            w.write_record([k, v]).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub(crate) fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.join(name).display()));
    fs::create_dir_all(dir).map_err(io)?;
    let tmp = dir.join(format!(".{name}.tmp"));
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, dir.join(name)).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_projection_flattens_nested_results() {
        let r = Report {
            command: "x".into(),
            config: RunConfig::default(),
            status: "ok".into(),
            results: json!({"a": [1, {"b": "c,d"}], "e": null}),
            timing: None,
            version: VERSION.into(),
        };
        let csv = r.to_csv();
        assert!(csv.contains("results.a.0,1\n"));
        assert!(csv.contains("results.a.1.b,\"c,d\"\n"));
        assert!(csv.contains("results.e,\n"));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(v.get("timing").is_none());
    }
}
