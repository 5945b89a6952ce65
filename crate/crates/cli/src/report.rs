use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

/// Everything that determines a report. Output paths and thread counts are
/// left out so they do not change the hash.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JobConfig {
    pub command: String,
    pub system: Option<hecklab::coxeter::SystemFile>,
    pub q: Option<String>,
    pub d: Option<usize>,
    pub n: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub levels: Option<usize>,
    pub x: Option<String>,
    pub y: Option<String>,
    pub grid: Option<String>,
    pub exact: bool,
    pub cap: usize,
}

impl JobConfig {
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Envelope<'a> {
    command: &'a str,
    version: &'a str,
    config_hash: String,
    config: &'a JobConfig,
    passed: bool,
    report: &'a Value,
}

/// A finished computation: the report body, an optional CSV table and
/// whether every checked identity held.
pub struct Outcome {
    pub report: Value,
    pub csv: Option<String>,
    pub passed: bool,
    /// Lines for stderr.
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn new<T: Serialize>(report: &T) -> Self {
        Outcome {
            report: serde_json::to_value(report).expect("report serializes"),
            csv: None,
            passed: true,
            notes: Vec::new(),
        }
    }

    pub fn passed(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }

    pub fn csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

pub fn render(config: &JobConfig, outcome: &Outcome) -> String {
    let env = Envelope {
        command: &config.command,
        version: hecklab::VERSION,
        config_hash: config.hash(),
        config,
        passed: outcome.passed,
        report: &outcome.report,
    };
    let mut text = serde_json::to_string_pretty(&env).expect("envelope serializes");
    text.push('\n');
    text
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
