//! AKLT′ states at small scale: lattice descriptions, construction by
//! Posner operations, the equivalent PEPS, and the site measurements that
//! follow.

mod circuit;
mod cluster;
mod lattice;
mod peps;
mod tensor;

pub use circuit::{build_aklt_prime_circuit, initial_state, refresh_statistics, AkltPrime, RefreshStats, MAX_REFRESHES};
pub use cluster::{
    edge_correlation, footnote_state, footnote_statistics, measure_povm_f, measure_site_spin, povm_completeness_error,
    povm_f_operators, site_spin_probability, site_spin_pvm, FootnoteStatistics, PovmOutcome, SiteSpinOutcome,
    QUARTET_WARN_TOL,
};
pub use lattice::{Lattice, Layout, Leg};
pub use peps::{build_peps_tensors, conserves_weight, contract_peps, PepsTensor};
