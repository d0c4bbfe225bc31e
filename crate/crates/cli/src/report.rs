use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDigest {
    pub name: String,
    /// file path, or "shipped" for the built-in copy
    pub origin: String,
    pub sha256: String,
}

impl TableDigest {
    pub fn new(name: &str, origin: &str, text: &str) -> Self {
        TableDigest { name: name.into(), origin: origin.into(), sha256: hex::encode(Sha256::digest(text.as_bytes())) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub tables: Vec<TableDigest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, input: Value, result: Value, tables: Vec<TableDigest>) -> Self {
        Report {
            tool: "rrp".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input,
            result,
            tables,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let mut r = Report::new("check-q", json!({"r": 7}), json!({"overall": "pass"}), vec![TableDigest::new("t", "shipped", "x")]);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        r.timing_ms = Some(1.5);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn digest_is_sha256() {
        let d = TableDigest::new("t", "shipped", "abc");
        assert_eq!(d.sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
