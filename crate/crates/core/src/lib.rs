//! Dense simulation of the Posner-molecule model of quantum computation.
//!
//! Qubits carry integer labels. Six labels form a Posner register whose
//! order fixes the action of the cyclic charge `C`. On top of the dense state
//! layer ([`qstate`]) sit the spin observables and charge eigenbases
//! ([`spin`]), the molecular instruction set ([`machine`]), the two
//! error-detecting codes ([`codes`]), the protocols built from binding
//! measurements ([`protocols`]) and the AKLT′ constructions ([`aklt`]).
//!
//! Numeric types are generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix the double-precision instantiation used for all
//! reported numbers.

pub mod aklt;
pub mod codes;
pub mod error;
pub mod linalg;
pub mod machine;
pub mod protocols;
pub mod qstate;
pub mod rng;
pub mod scalar;
pub mod spin;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use qstate::{
    apply, expectation, expectation_real, kron, measure_kraus, measure_pvm, partial_trace, pvm_probabilities,
    DenseOperator, Measurement, QState, Selection, StateKind,
};
pub use scalar::Scalar;

/// Integer identifier of a qubit.
pub type Label = usize;

pub type C64 = num_complex::Complex<f64>;
pub type QState64 = QState<f64>;
pub type Operator64 = DenseOperator<f64>;
pub type Matrix64 = Matrix<f64>;
