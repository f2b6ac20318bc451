use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// One named check. Failures always carry the measured value.
#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub name: String,
    pub pass: bool,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Outcome {
    pub fn pass(name: &str, value: impl Into<Value>) -> Self {
        Outcome { name: name.into(), pass: true, value: value.into(), reason: None }
    }

    pub fn fail(name: &str, value: impl Into<Value>, reason: impl Into<String>) -> Self {
        Outcome { name: name.into(), pass: false, value: value.into(), reason: Some(reason.into()) }
    }

    /// Pass iff `ok`; `reason` is only kept on failure.
    pub fn check(name: &str, ok: bool, value: impl Into<Value>, reason: impl Into<String>) -> Self {
        if ok {
            Outcome::pass(name, value)
        } else {
            Outcome::fail(name, value, reason)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub outcomes: Vec<Outcome>,
    pub artifacts: Vec<String>,
    pub data: Value,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }
}

/// SHA-256 over length-prefixed parts, so part boundaries matter.
#[derive(Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn part(&mut self, bytes: &[u8]) -> &mut Self {
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
        self
    }

    pub fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}
