use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{QState, StateKind};
use crate::scalar::Scalar;
use crate::Label;

/// Serialized form of a [`QState`]: `{im, kind, labels, n, re}`.
///
/// Mixed states store the density matrix row-major. Fields are declared in
/// alphabetical order so the emitted JSON has sorted keys.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub im: Vec<f64>,
    pub kind: StateKind,
    pub labels: Vec<Label>,
    pub n: usize,
    pub re: Vec<f64>,
}

impl<T: Scalar> QState<T> {
    pub fn to_json(&self) -> StateJson {
        StateJson {
            im: self.data().iter().map(|z| z.im.as_f64()).collect(),
            kind: self.kind(),
            labels: self.labels().to_vec(),
            n: self.n(),
            re: self.data().iter().map(|z| z.re.as_f64()).collect(),
        }
    }

    /// Rebuilds a state, re-checking every invariant.
    pub fn from_json(j: &StateJson) -> Result<Self> {
        if j.n != j.labels.len() || j.re.len() != j.im.len() {
            return Err(Error::Serialization("inconsistent state record".into()));
        }
        let data = j.re.iter().zip(&j.im).map(|(&r, &i)| Complex::new(T::lit(r), T::lit(i))).collect();
        let s = QState::unchecked(j.kind, j.labels.clone(), data)?;
        s.check_invariants()?;
        Ok(s)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_json())?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}
