//! The Posner instruction set over a registry of qubits and molecules.
//!
//! A [`Machine`] owns the joint state of every live qubit, the named Posner
//! registers and the set of bound pairs. Operations mirror the molecular
//! processes: singlet creation, hextuple formation, permutation, identical
//! rotations, binding measurements, separation and hydrolysis.

mod bell;
mod script;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qstate::factored::{self, BindingMap, Complement, LocalMap, SectorMap};
use crate::qstate::measure::choose;
use crate::qstate::{apply, kron, partial_trace, DenseOperator, QState, Selection, StateKind};
use crate::scalar::{c_one, c_zero, Scalar};
use crate::spin::{build_rotation, build_tau_projector, sector_weights, C_CYCLE};
use crate::Label;

pub use bell::{coarse_bell_check, coarse_bell_check_all, BellCheck};
pub use script::{run_script, Instruction, ScriptTrace, TraceStep};

/// A named Posner: six qubit labels in geometry order (positions `r₁…r₆`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosnerRegister {
    pub name: String,
    pub labels: [Label; 6],
}

impl PosnerRegister {
    pub fn first_trio(&self) -> [Label; 3] {
        [self.labels[0], self.labels[1], self.labels[2]]
    }

    pub fn second_trio(&self) -> [Label; 3] {
        [self.labels[3], self.labels[4], self.labels[5]]
    }
}

/// Result of a binding measurement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BindingOutcome<T> {
    pub bound: bool,
    /// Probability of the outcome that occurred.
    pub probability: T,
    /// Probability of binding, `Tr(Π ρ)`.
    pub p_bind: T,
}

fn ordered_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct Machine<T> {
    state: QState<T>,
    posners: BTreeMap<String, PosnerRegister>,
    bound_pairs: BTreeSet<(String, String)>,
    next_label: Label,
}

impl<T: Scalar> Default for Machine<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> Machine<T> {
    pub fn new() -> Self {
        Self { state: QState::vacuum(), posners: BTreeMap::new(), bound_pairs: BTreeSet::new(), next_label: 0 }
    }

    #[inline]
    pub fn state(&self) -> &QState<T> {
        &self.state
    }

    pub fn posners(&self) -> impl Iterator<Item = &PosnerRegister> {
        self.posners.values()
    }

    pub fn bound_pairs(&self) -> &BTreeSet<(String, String)> {
        &self.bound_pairs
    }

    pub fn register(&self, name: &str) -> Result<&PosnerRegister> {
        self.posners.get(name).ok_or_else(|| Error::UnknownRegister(name.to_string()))
    }

    pub fn owner_of(&self, label: Label) -> Option<&str> {
        self.posners.values().find(|p| p.labels.contains(&label)).map(|p| p.name.as_str())
    }

    pub fn is_bound(&self, name: &str) -> bool {
        self.bound_pairs.iter().any(|(a, b)| a == name || b == name)
    }

    fn unbound(&self, name: &str) -> Result<&PosnerRegister> {
        let reg = self.register(name)?;
        if self.is_bound(name) {
            return Err(Error::BindingLock(name.to_string()));
        }
        Ok(reg)
    }

    fn set_state(&mut self, state: QState<T>) -> Result<()> {
        state.check_invariants()?;
        self.state = state;
        self.check_registry()
    }

    /// Registry invariants: every register label is live and owned once, and
    /// bound pairs name existing registers.
    pub fn check_registry(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for reg in self.posners.values() {
            for &l in &reg.labels {
                self.state.position(l)?;
                if !seen.insert(l) {
                    return Err(Error::Ownership { label: l, owner: reg.name.clone() });
                }
            }
        }
        for (a, b) in &self.bound_pairs {
            self.register(a)?;
            self.register(b)?;
        }
        Ok(())
    }

    /// Adjoins `state` on fresh labels (assigned in its label order).
    pub fn prepare_state(&mut self, state: &QState<T>) -> Result<Vec<Label>> {
        let start = self.next_label;
        let fresh: Vec<Label> = (start..start + state.n()).collect();
        let relabeled = state.relabel(|l| fresh[state.position(l).expect("own label")])?;
        let joint = self.state.tensor(&relabeled)?;
        self.next_label += state.n();
        self.set_state(joint)?;
        Ok(fresh)
    }

    /// Operation 1: a fresh pair in `|Ψ⁻⟩ = (|01⟩ − |10⟩)/√2`.
    pub fn prepare_singlet(&mut self) -> Result<(Label, Label)> {
        let labels = self.prepare_state(&singlet(0, 1))?;
        Ok((labels[0], labels[1]))
    }

    /// Operation 2: groups six free labels into a register. The logical state
    /// is untouched; the label order is the geometry assignment.
    pub fn form_posner(&mut self, name: &str, labels: &[Label]) -> Result<&PosnerRegister> {
        if self.posners.contains_key(name) {
            return Err(Error::DuplicateRegister(name.to_string()));
        }
        let labels: [Label; 6] =
            labels.try_into().map_err(|_| Error::Arity { expected: 6, got: labels.len() })?;
        crate::qstate::check_distinct(&labels)?;
        for &l in &labels {
            self.state.position(l)?;
            if let Some(owner) = self.owner_of(l) {
                return Err(Error::Ownership { label: l, owner: owner.to_string() });
            }
        }
        self.posners.insert(name.to_string(), PosnerRegister { name: name.to_string(), labels });
        Ok(&self.posners[name])
    }

    /// Operation 2 with the default geometry: ascending label order.
    pub fn form_posner_ascending(&mut self, name: &str, labels: &[Label]) -> Result<&PosnerRegister> {
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        self.form_posner(name, &sorted)
    }

    /// Operation 3a: applies `C` to an unbound register.
    pub fn permute_hextuple(&mut self, name: &str) -> Result<()> {
        let labels = self.unbound(name)?.labels;
        let next = self.state.permute_qubits(&labels, &C_CYCLE)?;
        self.set_state(next)
    }

    fn rotate_labels(&mut self, labels: &[Label], axis: [T; 3], theta: T) -> Result<()> {
        let mut next = self.state.clone();
        for &l in labels {
            next = apply(&build_rotation(axis, theta, l)?, &next)?;
        }
        self.set_state(next)
    }

    /// Operation 3b: the same rotation `U_n̂(θ)` on all six qubits.
    pub fn rotate_hextuple(&mut self, name: &str, axis: [T; 3], theta: T) -> Result<()> {
        let labels = self.unbound(name)?.labels;
        self.rotate_labels(&labels, axis, theta)
    }

    /// Operation 6a: the same rotation on all twelve qubits of a bound pair.
    pub fn rotate_dodectuple(&mut self, a: &str, b: &str, axis: [T; 3], theta: T) -> Result<()> {
        self.require_bound(a, b)?;
        let mut labels = self.register(a)?.labels.to_vec();
        labels.extend_from_slice(&self.register(b)?.labels);
        self.rotate_labels(&labels, axis, theta)
    }

    /// A single-qubit rotation, used while preparing input states.
    pub fn rotate_qubit(&mut self, label: Label, axis: [T; 3], theta: T) -> Result<()> {
        if let Some(owner) = self.owner_of(label) {
            if self.is_bound(owner) {
                return Err(Error::BindingLock(owner.to_string()));
            }
        }
        self.rotate_labels(&[label], axis, theta)
    }

    fn require_bound(&self, a: &str, b: &str) -> Result<()> {
        self.register(a)?;
        self.register(b)?;
        if !self.bound_pairs.contains(&ordered_pair(a, b)) {
            return Err(Error::NotBound(format!("{a}-{b}")));
        }
        Ok(())
    }

    fn pair_labels(&self, a: &str, b: &str) -> Result<([Label; 6], [Label; 6])> {
        if a == b {
            return Err(Error::InvalidArgument(format!("cannot pair register `{a}` with itself")));
        }
        Ok((self.register(a)?.labels, self.register(b)?.labels))
    }

    fn binding_map(&self, a: &[Label; 6], b: &[Label; 6]) -> Result<BindingMap<'static>> {
        Ok(BindingMap { a: self.state.positions(a)?, b: self.state.positions(b)?, cycle: &C_CYCLE })
    }

    /// Dense `Π_AB = Σ_τ Π_{τ_A=τ} ⊗ Π_{τ_B=−τ}` on the twelve labels of `a`
    /// then `b` (4096 × 4096; intended for verification only).
    pub fn build_binding_projector(&self, a: &str, b: &str) -> Result<DenseOperator<T>> {
        let (la, lb) = self.pair_labels(a, b)?;
        binding_projector(&la, &lb)
    }

    /// `Tr(Π_AB ρ)` without measuring.
    pub fn binding_probability(&self, a: &str, b: &str) -> Result<T> {
        let (la, lb) = self.pair_labels(a, b)?;
        Ok(factored::weight(&self.state, &self.binding_map(&la, &lb)?).re.max(T::zero()))
    }

    /// Operation 5: measures `{Π_AB, I − Π_AB}`. On success the registers
    /// become a bound pair.
    pub fn attempt_binding(&mut self, a: &str, b: &str, selection: Selection<'_>) -> Result<BindingOutcome<T>> {
        let (la, lb) = self.pair_labels(a, b)?;
        self.unbound(a)?;
        self.unbound(b)?;
        let map = self.binding_map(&la, &lb)?;
        let outcome = self.measure_two_outcome(&map, selection)?;
        if outcome.bound {
            self.bound_pairs.insert(ordered_pair(a, b));
        }
        Ok(outcome)
    }

    /// Binding against a reference Posner prepared in the `τ = 0` sector and
    /// then discarded. Because `Π_AR (ψ ⊗ r) = (Π_{τ=0} ψ) ⊗ r` for such an
    /// `r`, this is the measurement `{Π_{τ=0}, I − Π_{τ=0}}` on the register,
    /// carried out without allocating the reference qubits.
    pub fn bind_to_reference(&mut self, name: &str, selection: Selection<'_>) -> Result<BindingOutcome<T>> {
        let labels = self.unbound(name)?.labels;
        let map = SectorMap { positions: self.state.positions(&labels)?, cycle: &C_CYCLE, tau: 0 };
        self.measure_two_outcome(&map, selection)
    }

    fn measure_two_outcome<M: LocalMap<T>>(&mut self, map: &M, selection: Selection<'_>) -> Result<BindingOutcome<T>> {
        let p_bind = factored::weight(&self.state, map).re.clamp(T::zero(), T::one());
        let probabilities = [p_bind, T::one() - p_bind];
        let outcome = choose(&probabilities, selection)?;
        let next = if outcome == 0 {
            self.state.renormalized_like(factored::sandwich(&self.state, map))?
        } else {
            match self.state.kind() {
                StateKind::Pure => self.state.renormalized_like(factored::left(&self.state, &Complement(map)))?,
                StateKind::Mixed => self.state.renormalized_like(failure_update(&self.state, map))?,
            }
        };
        self.set_state(next)?;
        Ok(BindingOutcome { bound: outcome == 0, probability: probabilities[outcome], p_bind })
    }

    /// Operation 6b: removes the binding lock; the state is untouched.
    pub fn separate(&mut self, a: &str, b: &str) -> Result<()> {
        self.require_bound(a, b)?;
        self.bound_pairs.remove(&ordered_pair(a, b));
        Ok(())
    }

    /// Operation 3c: dissolves an unbound register, freeing its labels.
    pub fn hydrolyze(&mut self, name: &str) -> Result<()> {
        self.unbound(name)?;
        self.posners.remove(name);
        Ok(())
    }

    /// Operation 6c: separates a bound pair and dissolves both registers.
    pub fn hydrolyze_pair(&mut self, a: &str, b: &str) -> Result<()> {
        self.separate(a, b)?;
        self.hydrolyze(a)?;
        self.hydrolyze(b)
    }

    /// `(Tr Π_{τ=0} ρ, Tr Π_{τ=1} ρ, Tr Π_{τ=2} ρ)` for a register.
    pub fn sector_weights(&self, name: &str) -> Result<[T; 3]> {
        sector_weights(&self.state, &self.register(name)?.labels)
    }

    /// Reduced state of the given labels.
    pub fn reduced_state(&self, keep: &[Label]) -> Result<QState<T>> {
        partial_trace(&self.state, keep)
    }

    /// Replaces the joint state with its reduction onto `keep`, dissolving
    /// any register that loses a qubit.
    pub fn discard_except(&mut self, keep: &[Label]) -> Result<()> {
        let reduced = if keep.len() == self.state.n() {
            self.state.reorder(keep)?
        } else {
            partial_trace(&self.state, keep)?
        };
        let dropped: Vec<String> = self
            .posners
            .values()
            .filter(|p| p.labels.iter().any(|l| !keep.contains(l)))
            .map(|p| p.name.clone())
            .collect();
        for name in dropped {
            self.bound_pairs.retain(|(a, b)| *a != name && *b != name);
            self.posners.remove(&name);
        }
        self.set_state(reduced)
    }
}

/// `ρ − {Π, ρ} + ΠρΠ` for a Hermitian projector `Π`, unnormalized.
pub(crate) fn failure_update<T: Scalar>(s: &QState<T>, map: &impl LocalMap<T>) -> Vec<num_complex::Complex<T>> {
    let pr = factored::left(s, map);
    let rp = factored::right(s, s.data(), map);
    let prp = factored::right(s, &pr, map);
    let one = c_one::<T>();
    factored::combine(&[(one, s.data()), (-one, &pr), (-one, &rp), (one, &prp)])
}

/// `|Ψ⁻⟩` on two labels.
pub fn singlet<T: Scalar>(a: Label, b: Label) -> QState<T> {
    let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let z = c_zero::<T>();
    QState::pure(
        vec![a, b],
        vec![z, num_complex::Complex::new(h, T::zero()), num_complex::Complex::new(-h, T::zero()), z],
    )
    .expect("normalized singlet")
}

/// Dense binding projector on `a ++ b`.
pub fn binding_projector<T: Scalar>(a: &[Label; 6], b: &[Label; 6]) -> Result<DenseOperator<T>> {
    let mut total: Option<DenseOperator<T>> = None;
    for tau in 0..3u8 {
        let term = kron(&build_tau_projector(tau, a)?, &build_tau_projector((3 - tau) % 3, b)?)?;
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term)?,
        });
    }
    Ok(total.expect("three terms"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::charge_element;

    fn two_posners(m: &mut Machine<f64>) {
        for _ in 0..6 {
            m.prepare_singlet().unwrap();
        }
        m.form_posner("A", &[0, 2, 4, 6, 8, 10]).unwrap();
        m.form_posner("B", &[1, 3, 5, 7, 9, 11]).unwrap();
    }

    #[test]
    fn six_shared_singlets_always_bind() {
        let mut m = Machine::<f64>::new();
        two_posners(&mut m);
        let out = m.attempt_binding("A", "B", Selection::Seed(1)).unwrap();
        assert!(out.bound);
        assert!((out.p_bind - 1.0).abs() < 1e-12);
    }

    #[test]
    fn separated_pair_rebinds_with_certainty() {
        let mut m = Machine::<f64>::new();
        for _ in 0..6 {
            m.prepare_singlet().unwrap();
        }
        m.form_posner_ascending("A", &[0, 1, 2, 3, 4, 5]).unwrap();
        m.form_posner_ascending("B", &[6, 7, 8, 9, 10, 11]).unwrap();
        let first = m.attempt_binding("A", "B", Selection::Force(0)).unwrap();
        assert!(first.p_bind < 1.0);
        m.separate("A", "B").unwrap();
        let again = m.attempt_binding("A", "B", Selection::Seed(3)).unwrap();
        assert!((again.p_bind - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bound_registers_are_locked() {
        let mut m = Machine::<f64>::new();
        two_posners(&mut m);
        m.attempt_binding("A", "B", Selection::Force(0)).unwrap();
        assert_eq!(m.permute_hextuple("A"), Err(Error::BindingLock("A".into())));
        assert_eq!(m.hydrolyze("B"), Err(Error::BindingLock("B".into())));
        m.hydrolyze_pair("A", "B").unwrap();
        m.form_posner("A2", &[0, 1, 2, 3, 4, 5]).unwrap();
    }

    #[test]
    fn ownership_and_capacity_errors() {
        let mut m = Machine::<f64>::new();
        two_posners(&mut m);
        assert!(matches!(m.form_posner("C", &[12, 13, 14, 15, 0, 1]), Err(Error::UnknownLabel(12))));
        assert!(matches!(m.form_posner("C", &[0, 1, 3, 5, 7, 9]), Err(Error::Ownership { .. })));
        for _ in 0..3 {
            m.prepare_singlet().unwrap();
        }
        assert!(matches!(m.prepare_singlet(), Err(Error::Capacity { .. })));
    }

    #[test]
    fn permutation_multiplies_tau_one_by_omega() {
        let mut m = Machine::<f64>::new();
        let c = charge_element::<f64>(1, 3).unwrap();
        let s = QState::pure((0..6).collect(), c.vector.clone()).unwrap();
        m.prepare_state(&s).unwrap();
        m.form_posner("A", &[0, 1, 2, 3, 4, 5]).unwrap();
        m.permute_hextuple("A").unwrap();
        let ov = s.overlap(m.state()).unwrap();
        assert!((ov - crate::scalar::omega::<f64>()).norm() < 1e-12);
    }

    #[test]
    fn mixed_failure_branch_matches_complement_sandwich() {
        let mut m = Machine::<f64>::new();
        let mut rho = QState::<f64>::maximally_mixed(vec![0, 1, 2]).unwrap();
        rho = rho.tensor(&QState::from_bits(vec![3, 4, 5], &[0, 1, 0]).unwrap().to_mixed().unwrap()).unwrap();
        m.prepare_state(&rho).unwrap();
        m.form_posner("A", &[0, 1, 2, 3, 4, 5]).unwrap();
        let before = m.state().clone();
        let out = m.bind_to_reference("A", Selection::Force(1)).unwrap();
        assert!(!out.bound);
        let p0 = build_tau_projector::<f64>(0, &[0, 1, 2, 3, 4, 5]).unwrap();
        let q = DenseOperator::identity((0..6).collect()).unwrap().add(&p0.scale(num_complex::Complex::new(-1.0, 0.0))).unwrap();
        let qm = q.matrix();
        let expected = qm.matmul(&before.density_matrix().unwrap()).unwrap().matmul(qm).unwrap();
        let expected = expected.scale(num_complex::Complex::new(1.0 / expected.trace().re, 0.0));
        assert!(m.state().density_matrix().unwrap().max_abs_diff(&expected).unwrap() < 1e-12);
    }
}
