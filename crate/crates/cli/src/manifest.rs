//! `manifest.json`: a flat JSON object describing how an output directory
//! was produced. Passing it back as `--config` reruns the same scenario.

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub struct Manifest {
    fields: Map<String, Value>,
}

impl Manifest {
    pub fn new(command: &str, seed: u64) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), Value::from(command));
        fields.insert(
            "tool_version".into(),
            Value::from(env!("CARGO_PKG_VERSION")),
        );
        fields.insert("seed".into(), Value::from(seed));
        Manifest { fields }
    }

    pub fn insert(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.into(), value.into());
        self
    }

    pub fn extend(&mut self, pairs: impl IntoIterator<Item = (&'static str, Value)>) -> &mut Self {
        for (k, v) in pairs {
            self.fields.insert(k.into(), v);
        }
        self
    }

    /// First 16 hex digits of the SHA-256 of everything except the
    /// timestamp, so identical runs share an id.
    pub fn run_id(&self) -> String {
        let canonical = serde_json::to_string(&self.fields).expect("JSON map serializes");
        Sha256::digest(canonical.as_bytes())
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn render(&self, timestamp: &str) -> String {
        let mut out = self.fields.clone();
        out.insert("run_id".into(), Value::from(self.run_id()));
        out.insert("timestamp".into(), Value::from(timestamp));
        let mut text =
            serde_json::to_string_pretty(&Value::Object(out)).expect("JSON map serializes");
        text.push('\n');
        text
    }
}

pub fn now_iso8601() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}
