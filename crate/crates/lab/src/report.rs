use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const TOOL: &str = "nonarch-lab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Validated parameters of one run, echoed into its report.
///
/// Thread count is deliberately absent: it never changes a result.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub q: Vec<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub r: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    /// Enumeration caps and budgets by name.
    pub caps: BTreeMap<String, u64>,
    pub seed: u64,
    /// Subcommand-specific options.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub options: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
}

/// One asserted inequality or identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    /// The parsed input file, so the report reproduces itself.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Value>,
    pub result: Value,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn new(config: RunConfig, input: Option<Value>, result: Value, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.holds);
        Report { tool: TOOL, version: VERSION, config, input, result, checks, passed }
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn check(name: impl Into<String>, holds: bool) -> Check {
    Check { name: name.into(), holds }
}
