//! Experiment runner, script executor and estimate calculator built on
//! `posner-core`.
//!
//! A run is described by an [`config::ExperimentConfig`] (or a
//! [`config::Suite`] of them). Every experiment returns an
//! [`report::ExperimentResult`] whose rows carry a value and, where a
//! published number exists, its target, tolerance and verdict.

pub mod config;
pub mod estimates;
pub mod experiments;
pub mod report;
pub mod selftest;

use thiserror::Error;

/// Process exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// Process exit code for malformed input or arguments.
pub const EXIT_USAGE: i32 = 2;
/// Process exit code for a failed check or a numerical invariant violation.
pub const EXIT_FAILURE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Invariant(_) => EXIT_FAILURE,
        }
    }
}

impl From<posner_core::Error> for CliError {
    fn from(e: posner_core::Error) -> Self {
        use posner_core::Error as E;
        match e {
            E::LabelCollision(_)
            | E::UnknownLabel(_)
            | E::Capacity { .. }
            | E::NonUnitAxis(_)
            | E::Arity { .. }
            | E::Ownership { .. }
            | E::BindingLock(_)
            | E::NotBound(_)
            | E::UnknownRegister(_)
            | E::DuplicateRegister(_)
            | E::Lattice(_)
            | E::InvalidArgument(_)
            | E::Serialization(_) => CliError::Usage(e.to_string()),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
