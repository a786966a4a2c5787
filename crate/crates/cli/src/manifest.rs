use chrono::{SecondsFormat, Utc};
use serde::Serialize;

use h2tea::dataset::PaperDataset;
use h2tea::Scenario;

/// Provenance record written next to every output.
///
/// Two runs with the same inputs differ only in `timestamp`.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub scenario_checksum: String,
    pub dataset_checksum: String,
    pub defaults_source: String,
    pub tool_version: &'static str,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(args: &[String], scenario: &Scenario, defaults_source: &str) -> Self {
        Self {
            // argv[0] depends on how the binary was invoked, not on the run.
            command_line: std::iter::once("h2tea".to_string())
                .chain(args.iter().skip(1).cloned())
                .collect(),
            scenario_checksum: scenario.checksum(),
            dataset_checksum: PaperDataset.checksum(),
            defaults_source: defaults_source.to_string(),
            tool_version: h2tea::VERSION,
            timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }
}
