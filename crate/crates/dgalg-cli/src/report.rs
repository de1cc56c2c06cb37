//! Deterministic reports: an ordered list of fields rendered either as plain
//! text or as JSON with the same content.

use serde_json::Value;

#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn push_list(&mut self, key: &str, items: Vec<String>) {
        self.fields.push((
            key.to_string(),
            Value::Array(items.into_iter().map(Value::String).collect()),
        ));
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            match v {
                Value::Array(items) => {
                    out.push_str(k);
                    out.push_str(":\n");
                    for item in items {
                        out.push_str("  - ");
                        out.push_str(&scalar(item));
                        out.push('\n');
                    }
                }
                other => {
                    out.push_str(k);
                    out.push_str(": ");
                    out.push_str(&scalar(other));
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn json(&self) -> String {
        let mut map = serde_json::Map::new();
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).unwrap();
        s.push('\n');
        s
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
