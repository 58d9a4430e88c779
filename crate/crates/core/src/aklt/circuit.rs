//! Building AKLT′ states with Posner operations: singlets on every edge,
//! Posner formation, then projection of every Posner onto `τ = 0` by binding.

use serde::Serialize;

use crate::aklt::lattice::{Lattice, Layout};
use crate::error::{Error, Result};
use crate::machine::{singlet, Machine};
use crate::protocols::tau_zero_cascade;
use crate::qstate::{partial_trace, QState, Selection, MAX_QUBITS};
use crate::rng::stream_seed;
use crate::scalar::Scalar;
use crate::Label;

/// Upper bound on refresh rounds in the unforced construction.
pub const MAX_REFRESHES: usize = 100_000;

#[derive(Clone, Debug)]
pub struct AkltPrime<T> {
    pub layout: Layout,
    /// Pure state on leg and stub qubits.
    pub state: QState<T>,
    /// Number of preparation rounds used (1 when forced).
    pub attempts: usize,
    /// Probability that a single round projects every Posner.
    pub round_success_probability: T,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefreshStats {
    pub attempts: Vec<usize>,
    pub mean_attempts: f64,
    /// `1 / p` for the per-round success probability `p`.
    pub expected_attempts: f64,
}

impl<T: Scalar> AkltPrime<T> {
    pub fn register(&self, k: usize) -> [Label; 6] {
        self.layout.register(k)
    }

    /// The state of the leg qubits with the stubs traced out (mixed unless
    /// the lattice is closed).
    pub fn reduced(&self) -> Result<QState<T>> {
        if self.layout.boundary.is_empty() {
            Ok(self.state.clone())
        } else {
            partial_trace(&self.state, &self.layout.physical())
        }
    }
}

/// Singlets on every edge and every boundary stub, labels ascending.
pub fn initial_state<T: Scalar>(layout: &Layout) -> Result<QState<T>> {
    if layout.n_qubits() > MAX_QUBITS {
        return Err(Error::Capacity { requested: layout.n_qubits(), limit: MAX_QUBITS });
    }
    let mut s = QState::vacuum();
    for (a, b) in layout.singlet_pairs() {
        s = s.tensor(&singlet(a, b))?;
    }
    s.reorder(&(0..layout.n_qubits()).collect::<Vec<_>>())
}

/// One preparation round. Returns the projected machine, or `None` if a
/// binding failed, together with the probability of full success.
fn round<T: Scalar>(layout: &Layout, force: bool, seed: u64) -> Result<(Option<Machine<T>>, T)> {
    let mut m = Machine::<T>::new();
    m.prepare_state(&initial_state(layout)?)?;
    let names: Vec<String> = (0..layout.posners.len()).map(|k| format!("P{k}")).collect();
    for (k, name) in names.iter().enumerate() {
        m.form_posner(name, &layout.register(k))?;
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut p_all = T::one();
    if refs.len() >= 3 {
        let report = tau_zero_cascade(&mut m, &refs, force, seed)?;
        for step in &report.steps {
            p_all = p_all * T::lit(step.p_bind);
        }
        if !report.complete {
            return Ok((None, p_all));
        }
    } else {
        for (k, name) in refs.iter().enumerate() {
            let sel = if force { Selection::Force(0) } else { Selection::Seed(stream_seed(seed, k as u64)) };
            let out = m.bind_to_reference(name, sel)?;
            p_all = p_all * out.p_bind;
            if !out.bound {
                return Ok((None, p_all));
            }
        }
    }
    Ok((Some(m), p_all))
}

/// Builds AKLT′ on `lattice`. With `force_success` every binding is
/// postselected; otherwise failed rounds are discarded and the singlets
/// refreshed until a round succeeds.
pub fn build_aklt_prime_circuit<T: Scalar>(lattice: &Lattice, force_success: bool, seed: u64) -> Result<AkltPrime<T>> {
    let layout = lattice.layout()?;
    for attempt in 0..MAX_REFRESHES {
        let (machine, p) = round::<T>(&layout, force_success, stream_seed(seed, attempt as u64))?;
        if let Some(m) = machine {
            return Ok(AkltPrime { layout, state: m.state().clone(), attempts: attempt + 1, round_success_probability: p });
        }
    }
    Err(Error::Invariant(format!("no successful round in {MAX_REFRESHES} refreshes")))
}

/// Runs the unforced construction for `n_runs` seeds derived from `seed`.
pub fn refresh_statistics(lattice: &Lattice, n_runs: usize, seed: u64) -> Result<RefreshStats> {
    let p = round::<f64>(&lattice.layout()?, true, 0)?.1;
    let attempts = (0..n_runs)
        .map(|i| build_aklt_prime_circuit::<f64>(lattice, false, stream_seed(seed, i as u64)).map(|a| a.attempts))
        .collect::<Result<Vec<_>>>()?;
    let mean_attempts = attempts.iter().sum::<usize>() as f64 / n_runs.max(1) as f64;
    Ok(RefreshStats { attempts, mean_attempts, expected_attempts: 1.0 / p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::sector_weights;

    #[test]
    fn single_posner_is_projected() {
        let a = build_aklt_prime_circuit::<f64>(&Lattice::single_posner(), true, 0).unwrap();
        assert!((sector_weights(&a.state, &a.register(0)).unwrap()[0] - 1.0).abs() < 1e-9);
        assert!((a.round_success_probability - 0.375).abs() < 1e-12);
        assert_eq!(a.reduced().unwrap().n(), 6);
    }

    #[test]
    fn unforced_rounds_end_in_tau_zero() {
        let a = build_aklt_prime_circuit::<f64>(&Lattice::single_posner(), false, 4).unwrap();
        assert!((sector_weights(&a.state, &a.register(0)).unwrap()[0] - 1.0).abs() < 1e-9);
        assert!(a.attempts >= 1);
    }

    #[test]
    fn oversized_lattice_is_rejected() {
        let mut l = Lattice::posner_pair();
        l.edges.pop();
        assert!(matches!(build_aklt_prime_circuit::<f64>(&l, true, 0), Err(Error::Capacity { .. })));
    }
}
