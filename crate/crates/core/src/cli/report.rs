//! The JSON envelope written by every command.

use serde::Serialize;
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default, Serialize)]
pub struct Flags {
    /// False when a search stopped on its budget.
    pub exhaustive: Option<bool>,
    /// True when a reported prime is only a probable prime.
    pub probable: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub wall_millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub version: &'static str,
    pub seed: u64,
    pub input: Value,
    pub result: Value,
    pub flags: Flags,
    pub timings: Timings,
    pub timestamp: u64,
}

/// Looks up a boolean flag anywhere in the result tree.
fn find_flag(v: &Value, key: &str) -> Option<bool> {
    match v {
        Value::Object(m) => m
            .get(key)
            .and_then(Value::as_bool)
            .or_else(|| m.values().find_map(|x| find_flag(x, key))),
        Value::Array(a) => a.iter().find_map(|x| find_flag(x, key)),
        _ => None,
    }
}

impl Report {
    pub fn new(command: &str, seed: u64, input: Value, result: Value, wall_millis: u128) -> Report {
        let flags = Flags {
            exhaustive: find_flag(&result, "exhaustive"),
            probable: find_flag(&result, "probable"),
        };
        Report {
            command: command.into(),
            version: VERSION,
            seed,
            input,
            result,
            flags,
            timings: Timings { wall_millis },
            timestamp: super::cache::now(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// A report with its run-dependent fields removed, for comparing runs.
pub fn strip_volatile(report: &str) -> Result<Value, serde_json::Error> {
    let mut v: Value = serde_json::from_str(report)?;
    if let Some(m) = v.as_object_mut() {
        m.remove("timestamp");
        m.remove("timings");
    }
    Ok(v)
}
