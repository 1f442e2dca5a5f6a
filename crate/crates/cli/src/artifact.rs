use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
struct Envelope<'a, T> {
    kind: &'a str,
    tool_version: &'a str,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    created_unix: Option<u64>,
    payload: &'a T,
}

pub struct Writer {
    pub seed: u64,
    pub reproducible: bool,
}

impl Writer {
    /// Writes `payload` wrapped in an envelope to `out`, or to stdout.
    pub fn emit<T: Serialize>(&self, kind: &str, payload: &T, out: Option<&Path>) -> Result<()> {
        let created_unix = if self.reproducible {
            None
        } else {
            Some(
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            )
        };
        let envelope = Envelope {
            kind,
            tool_version: env!("CARGO_PKG_VERSION"),
            seed: self.seed,
            created_unix,
            payload,
        };
        let mut text = serde_json::to_string_pretty(&envelope)?;
        text.push('\n');
        match out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => Ok(std::io::stdout().lock().write_all(text.as_bytes())?),
        }
    }
}

/// Reads a JSON file that is either a bare value or an envelope around it.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut value: Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(inner) = value.get_mut("payload") {
        value = inner.take();
    }
    serde_json::from_value(value).with_context(|| format!("interpreting {}", path.display()))
}

/// Like [`load`], but when the payload has a field `field` that field is used.
pub fn load_field<T: DeserializeOwned>(path: &Path, field: &str) -> Result<T> {
    let mut value: Value = load(path)?;
    if let Some(inner) = value.get_mut(field) {
        value = inner.take();
    }
    serde_json::from_value(value).with_context(|| format!("interpreting {}", path.display()))
}
