use thiserror::Error;

use crate::Label;

/// Errors raised by state construction, measurement, the Posner machine and
/// the protocol layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit label {0} appears more than once")]
    LabelCollision(Label),
    #[error("unknown qubit label {0}")]
    UnknownLabel(Label),
    #[error("capacity exceeded: {requested} qubits requested, limit is {limit}")]
    Capacity { requested: usize, limit: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("state invariant violated: {0}")]
    Invariant(String),
    #[error("projectors do not resolve the identity (max deviation {0:e})")]
    IncompletePvm(f64),
    #[error("operator {index} is not an orthogonal projector (max deviation {deviation:e})")]
    NotProjector { index: usize, deviation: f64 },
    #[error("outcome {outcome} has probability {probability:e} and cannot be renormalized")]
    ZeroProbability { outcome: usize, probability: f64 },
    #[error("rotation axis must be a unit vector (norm {0})")]
    NonUnitAxis(f64),
    #[error("expected {expected} labels, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("qubit {label} already belongs to register `{owner}`")]
    Ownership { label: Label, owner: String },
    #[error("register `{0}` is bound; separate it first")]
    BindingLock(String),
    #[error("register `{0}` is not bound")]
    NotBound(String),
    #[error("unknown register `{0}`")]
    UnknownRegister(String),
    #[error("register `{0}` already exists")]
    DuplicateRegister(String),
    #[error("invalid lattice: {0}")]
    Lattice(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
