//! Runs a [`Suite`] criterion by criterion, timing each one.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::config::{Criterion, Suite};
use crate::experiments::run_experiment;
use crate::report::ExperimentResult;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub elapsed_seconds: f64,
    pub budget_seconds: f64,
    /// `experiment/row` for every failed row, plus any runner error.
    pub failures: Vec<String>,
    pub results: Vec<ExperimentResult>,
}

impl CriterionOutcome {
    pub fn over_budget(&self) -> bool {
        self.elapsed_seconds > self.budget_seconds
    }

    /// One status line, followed by the failed rows if any.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{} criterion {:>2}: {} ({:.2} s, budget {} s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_seconds,
            self.budget_seconds,
        );
        for f in &self.failures {
            s.push_str(&format!("\n       - {f}"));
        }
        s
    }
}

pub fn run_criterion(criterion: &Criterion, base_dir: &Path) -> CriterionOutcome {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    let mut results = Vec::new();
    for config in &criterion.experiments {
        match run_experiment(config, base_dir) {
            Ok(result) => {
                for name in result.failures() {
                    let row = &result.values[name];
                    let target = row.paper_target.as_ref().or(row.derived_target.as_ref());
                    failures.push(format!(
                        "{}/{name}: value {} target {}",
                        result.experiment,
                        row.value,
                        target.map_or("-".to_string(), |t| t.to_string())
                    ));
                }
                results.push(result);
            }
            Err(e) => failures.push(format!("{}: {e}", config.experiment)),
        }
    }
    let elapsed_seconds = t0.elapsed().as_secs_f64();
    let mut outcome = CriterionOutcome {
        id: criterion.id,
        title: criterion.title.clone(),
        pass: false,
        elapsed_seconds,
        budget_seconds: criterion.budget_seconds,
        failures,
        results,
    };
    if outcome.over_budget() {
        outcome.failures.push(format!("runtime {elapsed_seconds:.2} s exceeds {} s", criterion.budget_seconds));
    }
    outcome.pass = outcome.failures.is_empty();
    outcome
}

/// Runs every criterion, calling `report` after each one.
pub fn run_suite(suite: &Suite, base_dir: &Path, mut report: impl FnMut(&CriterionOutcome)) -> Vec<CriterionOutcome> {
    suite
        .criteria
        .iter()
        .map(|c| {
            let outcome = run_criterion(c, base_dir);
            report(&outcome);
            outcome
        })
        .collect()
}
