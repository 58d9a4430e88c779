//! Result rows and their canonical JSON and CSV renderings.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::{CliError, CliResult};

/// How a row's value is compared with its target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|value − target| ≤ tolerance`, elementwise for arrays.
    Absolute,
    /// `|log₁₀(value / target)| ≤ tolerance`.
    Log10,
    /// Exact equality of booleans or integers.
    Exact,
}

/// One named output. Only `value` is always present.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_target: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived_target: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_of_magnitude: Option<f64>,
}

impl Row {
    /// A reported value with nothing to compare against.
    pub fn value(value: impl Into<Value>) -> Self {
        Row {
            value: value.into(),
            exact: None,
            paper_target: None,
            derived_target: None,
            tolerance: None,
            comparison: None,
            pass: None,
            unit: None,
            order_of_magnitude: None,
        }
    }

    /// A value checked against a published number.
    pub fn paper(value: impl Into<Value>, target: impl Into<Value>, tolerance: f64) -> Self {
        let mut row = Row::value(value);
        row.paper_target = Some(target.into());
        row.tolerance = Some(tolerance);
        row.judge(Comparison::Absolute)
    }

    /// A value checked against an independently computed number.
    pub fn derived(value: impl Into<Value>, target: impl Into<Value>, tolerance: f64) -> Self {
        let mut row = Row::value(value);
        row.derived_target = Some(target.into());
        row.tolerance = Some(tolerance);
        row.judge(Comparison::Absolute)
    }

    /// A boolean or integer outcome that must equal a published one.
    pub fn paper_exact(value: impl Into<Value>, target: impl Into<Value>) -> Self {
        let mut row = Row::value(value);
        row.paper_target = Some(target.into());
        row.judge(Comparison::Exact)
    }

    pub fn with_exact(mut self, exact: impl Into<String>) -> Self {
        self.exact = Some(exact.into());
        self
    }

    pub fn with_unit(mut self, unit: &str) -> Self {
        self.unit = Some(unit.to_string());
        self
    }

    pub fn with_comparison(self, comparison: Comparison) -> Self {
        self.judge(comparison)
    }

    fn judge(mut self, comparison: Comparison) -> Self {
        let target = self.paper_target.as_ref().or(self.derived_target.as_ref());
        self.comparison = Some(comparison);
        self.pass = target.map(|t| compare(&self.value, t, self.tolerance.unwrap_or(0.0), comparison));
        self
    }
}

fn compare(value: &Value, target: &Value, tol: f64, comparison: Comparison) -> bool {
    match (value, target) {
        (Value::Array(v), Value::Array(t)) => {
            v.len() == t.len() && v.iter().zip(t).all(|(a, b)| compare(a, b, tol, comparison))
        }
        _ if comparison == Comparison::Exact => value == target,
        _ => match (value.as_f64(), target.as_f64()) {
            (Some(v), Some(t)) if comparison == Comparison::Log10 => {
                v > 0.0 && t > 0.0 && (v / t).log10().abs() <= tol
            }
            (Some(v), Some(t)) => (v - t).abs() <= tol,
            _ => false,
        },
    }
}

/// A rectangular numeric table for plotting.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Everything one experiment produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub experiment: String,
    pub params: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub values: BTreeMap<String, Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Value>,
}

impl ExperimentResult {
    pub fn new(experiment: &str, params: Value, seed: Option<u64>) -> Self {
        ExperimentResult { experiment: experiment.to_string(), params, seed, values: BTreeMap::new(), table: None, samples: None }
    }

    pub fn push(&mut self, name: &str, row: Row) {
        self.values.insert(name.to_string(), row);
    }

    /// Names of rows whose check failed.
    pub fn failures(&self) -> Vec<&str> {
        self.values.iter().filter(|(_, r)| r.pass == Some(false)).map(|(k, _)| k.as_str()).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn canonical_json<S: Serialize>(value: &S) -> CliResult<String> {
    // `serde_json::Map` is a BTreeMap without the `preserve_order` feature,
    // so the round trip through `Value` sorts every object.
    let v = serde_json::to_value(value).map_err(|e| CliError::Invariant(e.to_string()))?;
    let mut text = serde_json::to_string_pretty(&v).map_err(|e| CliError::Invariant(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

/// CSV rendering: the experiment's table when it has one, otherwise one line
/// per row. Several results are separated by a blank line.
pub fn to_csv(results: &[ExperimentResult]) -> CliResult<String> {
    let mut blocks = Vec::new();
    for result in results {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Invariant(e.to_string());
        if let Some(table) = &result.table {
            w.write_record(&table.columns).map_err(err)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|x| x.to_string())).map_err(err)?;
            }
        } else {
            w.write_record(["experiment", "name", "value", "paper_target", "derived_target", "tolerance", "pass"])
                .map_err(err)?;
            for (name, row) in &result.values {
                let target = |t: &Option<Value>| cell(t.as_ref());
                w.write_record([
                    result.experiment.clone(),
                    name.clone(),
                    cell(Some(&row.value)),
                    target(&row.paper_target),
                    target(&row.derived_target),
                    row.tolerance.map(|t| t.to_string()).unwrap_or_default(),
                    row.pass.map(|p| p.to_string()).unwrap_or_default(),
                ])
                .map_err(err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Invariant(e.to_string()))?;
        blocks.push(String::from_utf8(bytes).map_err(|e| CliError::Invariant(e.to_string()))?);
    }
    Ok(blocks.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn absolute_and_log_comparisons() {
        assert_eq!(Row::paper(0.3359375, 43.0 / 128.0, 1e-10).pass, Some(true));
        assert_eq!(Row::paper(json!([1.0, 0.0]), json!([1.0, 0.1]), 1e-3).pass, Some(false));
        let log = Row::paper(1.37e-4, 1e-4, 1.0).with_comparison(Comparison::Log10);
        assert_eq!(log.pass, Some(true));
        assert_eq!(Row::paper_exact(24, 24).pass, Some(true));
        assert_eq!(Row::value(1.0).pass, None);
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let text = canonical_json(&json!({"b": 1, "a": {"d": 2, "c": 3}})).unwrap();
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert!(text.find("\"c\"").unwrap() < text.find("\"d\"").unwrap());
    }
}
