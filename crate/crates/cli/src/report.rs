use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    WindowInsufficient,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::WindowInsufficient => 3,
        }
    }

    /// The worst of two outcomes: insufficiency outranks failure.
    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (Status::WindowInsufficient, _) | (_, Status::WindowInsufficient) => Status::WindowInsufficient,
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            _ => Status::Pass,
        }
    }
}

/// Envelope for every command's result: enough to rerun it from the report.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub quiver: String,
    pub quiver_source: String,
    pub field: String,
    #[serde(rename = "W")]
    pub weight_bound: u32,
    pub degree_window: (i32, i32),
    pub verdict: Status,
    pub result: Value,
}

impl Report {
    pub fn new(config: &RunConfig, command: &str, verdict: Status, result: Value) -> Report {
        Report {
            tool: "dgpp",
            version: VERSION,
            command: command.to_string(),
            quiver: config.quiver.name(),
            quiver_source: config.quiver_source.clone(),
            field: config.field_label(),
            weight_bound: config.weight_bound,
            degree_window: config.degree_window,
            verdict,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
