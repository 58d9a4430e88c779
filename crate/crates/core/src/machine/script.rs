//! JSON scripts of machine instructions and the traces they produce.
//!
//! A script is an array of records tagged by `op`, for example
//! `{"op": "attempt_binding", "a": "A", "b": "B", "seed": 7}`. Stochastic
//! instructions without their own `seed` or `force` draw from a stream
//! derived from the run seed and the step index, so a script replays
//! identically for a fixed run seed.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::machine::{BindingOutcome, Machine};
use crate::qstate::{QState, Selection};
use crate::rng::stream_seed;
use crate::scalar::Scalar;
use crate::Label;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Instruction {
    PrepareSinglet,
    /// Fresh qubits in a computational basis state.
    PrepareBasis { bits: Vec<u8> },
    FormPosner { name: String, labels: Vec<Label> },
    PermuteHextuple { name: String },
    RotateHextuple { name: String, axis: [f64; 3], theta: f64 },
    RotateDodectuple { a: String, b: String, axis: [f64; 3], theta: f64 },
    RotateQubit { label: Label, axis: [f64; 3], theta: f64 },
    AttemptBinding {
        a: String,
        b: String,
        #[serde(default)]
        seed: Option<u64>,
        /// `true` postselects binding, `false` postselects failure.
        #[serde(default)]
        force: Option<bool>,
    },
    BindToReference {
        name: String,
        #[serde(default)]
        seed: Option<u64>,
        #[serde(default)]
        force: Option<bool>,
    },
    Separate { a: String, b: String },
    Hydrolyze { name: String },
    HydrolyzePair { a: String, b: String },
    SectorWeights { name: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub op: String,
    pub result: Value,
    pub step: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScriptTrace {
    pub bound_pairs: Vec<(String, String)>,
    pub labels: Vec<Label>,
    pub posners: Vec<Value>,
    pub seed: u64,
    pub steps: Vec<TraceStep>,
}

fn selection(seed: Option<u64>, force: Option<bool>, run_seed: u64, step: usize) -> Selection<'static> {
    match (force, seed) {
        (Some(bound), _) => Selection::Force(if bound { 0 } else { 1 }),
        (None, Some(s)) => Selection::Seed(s),
        (None, None) => Selection::Seed(stream_seed(run_seed, step as u64)),
    }
}

fn outcome_json<T: Scalar>(o: &BindingOutcome<T>) -> Value {
    json!({ "bound": o.bound, "p_bind": o.p_bind.as_f64(), "probability": o.probability.as_f64() })
}

fn op_name(i: &Instruction) -> String {
    match serde_json::to_value(i) {
        Ok(Value::Object(m)) => m.get("op").and_then(Value::as_str).unwrap_or("?").to_string(),
        _ => "?".to_string(),
    }
}

impl<T: Scalar> Machine<T> {
    /// Executes one instruction and reports its result as JSON.
    pub fn execute(&mut self, instruction: &Instruction, run_seed: u64, step: usize) -> Result<Value> {
        let axis_t = |a: &[f64; 3]| [T::lit(a[0]), T::lit(a[1]), T::lit(a[2])];
        Ok(match instruction {
            Instruction::PrepareSinglet => {
                let (a, b) = self.prepare_singlet()?;
                json!({ "labels": [a, b] })
            }
            Instruction::PrepareBasis { bits } => {
                let s = QState::from_bits((0..bits.len()).collect(), bits)?;
                json!({ "labels": self.prepare_state(&s)? })
            }
            Instruction::FormPosner { name, labels } => {
                let reg = self.form_posner(name, labels)?;
                json!({ "labels": reg.labels })
            }
            Instruction::PermuteHextuple { name } => {
                self.permute_hextuple(name)?;
                Value::Null
            }
            Instruction::RotateHextuple { name, axis, theta } => {
                self.rotate_hextuple(name, axis_t(axis), T::lit(*theta))?;
                Value::Null
            }
            Instruction::RotateDodectuple { a, b, axis, theta } => {
                self.rotate_dodectuple(a, b, axis_t(axis), T::lit(*theta))?;
                Value::Null
            }
            Instruction::RotateQubit { label, axis, theta } => {
                self.rotate_qubit(*label, axis_t(axis), T::lit(*theta))?;
                Value::Null
            }
            Instruction::AttemptBinding { a, b, seed, force } => {
                outcome_json(&self.attempt_binding(a, b, selection(*seed, *force, run_seed, step))?)
            }
            Instruction::BindToReference { name, seed, force } => {
                outcome_json(&self.bind_to_reference(name, selection(*seed, *force, run_seed, step))?)
            }
            Instruction::Separate { a, b } => {
                self.separate(a, b)?;
                Value::Null
            }
            Instruction::Hydrolyze { name } => {
                self.hydrolyze(name)?;
                Value::Null
            }
            Instruction::HydrolyzePair { a, b } => {
                self.hydrolyze_pair(a, b)?;
                Value::Null
            }
            Instruction::SectorWeights { name } => {
                let w = self.sector_weights(name)?;
                json!({ "weights": w.iter().map(|x| x.as_f64()).collect::<Vec<_>>() })
            }
        })
    }
}

/// Parses and runs a script on a fresh machine.
pub fn run_script<T: Scalar>(text: &str, run_seed: u64) -> Result<(Machine<T>, ScriptTrace)> {
    let program: Vec<Instruction> =
        serde_json::from_str(text).map_err(|e| Error::Serialization(format!("script: {e}")))?;
    let mut machine = Machine::<T>::new();
    let mut steps = Vec::with_capacity(program.len());
    for (step, instruction) in program.iter().enumerate() {
        let result = machine.execute(instruction, run_seed, step)?;
        steps.push(TraceStep { op: op_name(instruction), result, step });
    }
    machine.state().check_invariants()?;
    machine.check_registry()?;
    let trace = ScriptTrace {
        bound_pairs: machine.bound_pairs().iter().cloned().collect(),
        labels: machine.state().labels().to_vec(),
        posners: machine.posners().map(|p| json!({ "labels": p.labels, "name": p.name })).collect(),
        seed: run_seed,
        steps,
    };
    Ok((machine, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    const NARRATIVE: &str = r#"[
        {"op": "prepare_singlet"}, {"op": "prepare_singlet"}, {"op": "prepare_singlet"},
        {"op": "prepare_singlet"}, {"op": "prepare_singlet"}, {"op": "prepare_singlet"},
        {"op": "form_posner", "name": "A", "labels": [0, 2, 4, 6, 8, 10]},
        {"op": "form_posner", "name": "B", "labels": [1, 3, 5, 7, 9, 11]},
        {"op": "attempt_binding", "a": "A", "b": "B"},
        {"op": "rotate_dodectuple", "a": "A", "b": "B", "axis": [0, 0, 1], "theta": 0.3},
        {"op": "hydrolyze_pair", "a": "A", "b": "B"},
        {"op": "form_posner", "name": "C", "labels": [0, 1, 2, 3, 4, 5]}
    ]"#;

    #[test]
    fn narrative_runs_and_replays() {
        let (m1, t1) = run_script::<f64>(NARRATIVE, 11).unwrap();
        let (m2, t2) = run_script::<f64>(NARRATIVE, 11).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(m1.state(), m2.state());
        assert_eq!(t1.steps[8].result["bound"], Value::Bool(true));
    }

    #[test]
    fn unknown_op_is_a_parse_error() {
        assert!(matches!(run_script::<f64>(r#"[{"op": "teleport"}]"#, 0), Err(Error::Serialization(_))));
    }
}
