//! Run configurations: a single experiment, or a suite of experiments grouped
//! into numbered acceptance criteria.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Written relative to the config file; stdout when absent.
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: String,
    #[serde(default = "empty_object")]
    pub params: Value,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}

impl ExperimentConfig {
    pub fn new(experiment: &str, params: Value, seed: Option<u64>) -> Self {
        ExperimentConfig { experiment: experiment.to_string(), params, seed, output: None }
    }

    /// The seed, or a usage error naming the experiment that needs one.
    pub fn require_seed(&self) -> CliResult<u64> {
        self.seed.ok_or_else(|| CliError::Usage(format!("experiment `{}` is stochastic and needs a `seed`", self.experiment)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Criterion {
    pub id: u32,
    pub title: String,
    /// Wall-clock budget for all experiments of the criterion.
    pub budget_seconds: f64,
    pub experiments: Vec<ExperimentConfig>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    pub suite: String,
    pub criteria: Vec<Criterion>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConfigFile {
    Single(ExperimentConfig),
    Suite(Suite),
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        let is_suite = value.get("suite").is_some();
        let parsed = if is_suite {
            serde_json::from_value(value).map(ConfigFile::Suite)
        } else {
            serde_json::from_value(value).map(ConfigFile::Single)
        };
        parsed.map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn output(&self) -> Option<&OutputSpec> {
        match self {
            ConfigFile::Single(c) => c.output.as_ref(),
            ConfigFile::Suite(s) => s.output.as_ref(),
        }
    }
}

/// The acceptance suite shipped with the crate.
pub const ACCEPTANCE_SUITE: &str = include_str!("../configs/acceptance.json");

pub fn acceptance_suite() -> CliResult<Suite> {
    match ConfigFile::parse(ACCEPTANCE_SUITE)? {
        ConfigFile::Suite(s) => Ok(s),
        ConfigFile::Single(_) => Err(CliError::Invariant("bundled acceptance config is not a suite".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_and_suite_forms() {
        let single = ConfigFile::parse(r#"{"experiment": "binding_table"}"#).unwrap();
        assert!(matches!(single, ConfigFile::Single(ref c) if c.params.is_object() && c.seed.is_none()));
        assert_eq!(acceptance_suite().unwrap().criteria.len(), 12);
    }

    #[test]
    fn unknown_fields_are_usage_errors() {
        let e = ConfigFile::parse(r#"{"experiment": "binding_table", "sed": 3}"#).unwrap_err();
        assert!(matches!(e, CliError::Usage(_)));
    }
}
