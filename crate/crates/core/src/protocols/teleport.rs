//! Incoherent teleportation of a sector-encoded qutrit from Posner `A` to
//! Posner `C` through a bound `B`–`C` pair.

use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::Result;
use crate::machine::Machine;
use crate::protocols::phi::{TauQutritBasis, POSNER};
use crate::qstate::{QState, Selection};
use crate::rng::stream;
use crate::scalar::Scalar;
use crate::Label;

#[derive(Clone, Debug)]
pub struct TeleportResult<T> {
    /// Whether `A` and `B` bound.
    pub bound: bool,
    /// `Tr(Π_AB ρ)` just before the `A`–`B` binding attempt.
    pub p_pi: T,
    /// Probability of the branch that occurred.
    pub branch_probability: T,
    /// Reduced state of `C`.
    pub c_state: QState<T>,
    /// Sector weights of `C`.
    pub c_distribution: [T; 3],
    /// The distribution predicted from the input coefficients for this branch.
    pub predicted: [T; 3],
}

/// JSON view of a [`TeleportResult`] without the state.
#[derive(Clone, Debug, Serialize)]
pub struct TeleportSummary {
    pub bound: bool,
    pub branch_probability: f64,
    pub c_distribution: [f64; 3],
    pub p_pi: f64,
    pub predicted: [f64; 3],
}

impl<T: Scalar> TeleportResult<T> {
    pub fn summary(&self) -> TeleportSummary {
        TeleportSummary {
            bound: self.bound,
            branch_probability: self.branch_probability.as_f64(),
            c_distribution: self.c_distribution.map(|x| x.as_f64()),
            p_pi: self.p_pi.as_f64(),
            predicted: self.predicted.map(|x| x.as_f64()),
        }
    }
}

/// `(|c₀|², |c₁|², |c₂|²)`.
pub fn success_distribution<T: Scalar>(c: &[Complex<T>; 3]) -> [T; 3] {
    c.map(|z| z.norm_sqr())
}

/// `p′_j = (1 − |c_j|²)/2`: the sector distribution of `C` after a failed
/// binding, equal to the outcome distribution of the encoded POVM.
pub fn failure_distribution<T: Scalar>(c: &[Complex<T>; 3]) -> [T; 3] {
    let half = T::lit(0.5);
    c.map(|z| (T::one() - z.norm_sqr()) * half)
}

/// Recovers `|c_j|²` from a branch record and that branch's distribution.
pub fn recover_input_weights<T: Scalar>(bound: bool, distribution: &[T; 3]) -> [T; 3] {
    if bound {
        *distribution
    } else {
        distribution.map(|p| T::one() - (p + p))
    }
}

/// `B` and `C` in `|+_τ⟩`, bound (postselected) and separated again. The
/// result does not depend on the input, so batch runs share it.
fn bound_pair<T: Scalar>(basis: &TauQutritBasis<T>) -> Result<(Machine<T>, Vec<Label>)> {
    let plus = basis.plus(&POSNER)?;
    let mut m = Machine::<T>::new();
    let b = m.prepare_state(&plus)?;
    let c = m.prepare_state(&plus)?;
    m.form_posner("B", &b)?;
    m.form_posner("C", &c)?;
    m.attempt_binding("B", "C", Selection::Force(0))?;
    m.separate("B", "C")?;
    Ok((m, c))
}

/// Adds `A` holding the encoded input to a machine from [`bound_pair`].
fn with_input<T: Scalar>(mut m: Machine<T>, basis: &TauQutritBasis<T>, coefficients: &[Complex<T>; 3]) -> Result<Machine<T>> {
    let a = m.prepare_state(&basis.encode(coefficients, &POSNER)?)?;
    m.form_posner("A", &a)?;
    Ok(m)
}

fn finish<T: Scalar>(
    mut m: Machine<T>,
    c: &[Label],
    coefficients: &[Complex<T>; 3],
    selection: Selection<'_>,
) -> Result<TeleportResult<T>> {
    let outcome = m.attempt_binding("A", "B", selection)?;
    let c_distribution = m.sector_weights("C")?;
    let c_state = m.reduced_state(c)?;
    let predicted =
        if outcome.bound { success_distribution(coefficients) } else { failure_distribution(coefficients) };
    Ok(TeleportResult {
        bound: outcome.bound,
        p_pi: outcome.p_bind,
        branch_probability: outcome.probability,
        c_state,
        c_distribution,
        predicted,
    })
}

/// Runs the protocol on 18 qubits: `A` holds `Σ c_j |j_τ⟩`, `B` and `C`
/// start in `|+_τ⟩` and are bound (postselected), separated, and then `A`
/// and `B` attempt to bind.
pub fn incoherent_teleport<T: Scalar>(
    basis: &TauQutritBasis<T>,
    coefficients: &[Complex<T>; 3],
    selection: Selection<'_>,
) -> Result<TeleportResult<T>> {
    let (pair, c) = bound_pair(basis)?;
    finish(with_input(pair, basis, coefficients)?, &c, coefficients, selection)
}

/// Both branches of [`incoherent_teleport`], bound first, from one
/// preparation.
pub fn teleport_branches<T: Scalar>(
    basis: &TauQutritBasis<T>,
    coefficients: &[Complex<T>; 3],
) -> Result<[TeleportResult<T>; 2]> {
    let (pair, c) = bound_pair(basis)?;
    branches_from(&pair, &c, basis, coefficients)
}

fn branches_from<T: Scalar>(
    pair: &Machine<T>,
    c: &[Label],
    basis: &TauQutritBasis<T>,
    coefficients: &[Complex<T>; 3],
) -> Result<[TeleportResult<T>; 2]> {
    let m = with_input(pair.clone(), basis, coefficients)?;
    Ok([finish(m.clone(), c, coefficients, Selection::Force(0))?, finish(m, c, coefficients, Selection::Force(1))?])
}

/// Gaussian-distributed unit vector of three coefficients.
pub fn random_coefficients<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> [Complex<T>; 3] {
    let mut draw = || {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex::new(re, im)
    };
    let c = [draw(), draw(), draw()];
    let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    c.map(|z| Complex::new(T::lit(z.re / norm), T::lit(z.im / norm)))
}

#[derive(Clone, Debug, Serialize)]
pub struct TeleportCheck {
    pub n_inputs: usize,
    /// Largest `|p_C(j) − |c_j|²|` in the bound branch.
    pub max_success_deviation: f64,
    /// Largest `|p_C(j) − (1 − |c_j|²)/2|` in the unbound branch.
    pub max_failure_deviation: f64,
    /// Largest `|p_Π − 1/3|`.
    pub max_p_pi_deviation: f64,
}

/// Runs both branches for `n_inputs` random inputs in the balanced basis;
/// input `i` is drawn from stream `i` of `seed`.
pub fn check_teleport_branches<T: Scalar>(n_inputs: usize, seed: u64) -> Result<TeleportCheck> {
    let basis = TauQutritBasis::<T>::balanced()?;
    let (pair, c) = bound_pair(&basis)?;
    let mut check =
        TeleportCheck { n_inputs, max_success_deviation: 0.0, max_failure_deviation: 0.0, max_p_pi_deviation: 0.0 };
    for i in 0..n_inputs {
        let coefficients = random_coefficients::<T, _>(&mut stream(seed, i as u64));
        let [ok, fail] = branches_from(&pair, &c, &basis, &coefficients)?;
        let dev = |r: &TeleportResult<T>| {
            r.c_distribution.iter().zip(&r.predicted).map(|(a, b)| (*a - *b).abs().as_f64()).fold(0.0, f64::max)
        };
        check.max_success_deviation = check.max_success_deviation.max(dev(&ok));
        check.max_failure_deviation = check.max_failure_deviation.max(dev(&fail));
        check.max_p_pi_deviation = check.max_p_pi_deviation.max((ok.p_pi.as_f64() - 1.0 / 3.0).abs());
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> Complex<f64> {
        Complex::new(x, y)
    }

    #[test]
    fn basis_input_zero_teleports_per_branch() {
        let basis = TauQutritBasis::<f64>::balanced().unwrap();
        let input = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let ok = incoherent_teleport(&basis, &input, Selection::Force(0)).unwrap();
        let fail = incoherent_teleport(&basis, &input, Selection::Force(1)).unwrap();
        for j in 0..3 {
            assert!((ok.c_distribution[j] - [1.0, 0.0, 0.0][j]).abs() < 1e-10);
            assert!((fail.c_distribution[j] - [0.0, 0.5, 0.5][j]).abs() < 1e-10);
        }
        assert!((ok.p_pi - 1.0 / 3.0).abs() < 1e-10);
        assert!((ok.branch_probability + fail.branch_probability - 1.0).abs() < 1e-10);
    }

    #[test]
    fn shared_preparation_matches_separate_runs() {
        let basis = TauQutritBasis::<f64>::balanced().unwrap();
        let input = [c(0.6, 0.0), c(0.0, 0.48), c(0.64, 0.0)];
        let [ok, fail] = teleport_branches(&basis, &input).unwrap();
        let single = incoherent_teleport(&basis, &input, Selection::Force(1)).unwrap();
        assert!(ok.bound && !fail.bound);
        assert_eq!(fail.c_distribution, single.c_distribution);
        let check = check_teleport_branches::<f64>(3, 5).unwrap();
        assert!(check.max_success_deviation < 1e-9 && check.max_failure_deviation < 1e-9);
    }

    #[test]
    fn plus_input_binds_with_one_third() {
        let basis = TauQutritBasis::<f64>::balanced().unwrap();
        let s = 1.0 / 3f64.sqrt();
        let r = incoherent_teleport(&basis, &[c(s, 0.0), c(0.0, s), c(-s, 0.0)], Selection::Force(1)).unwrap();
        assert!((r.p_pi - 1.0 / 3.0).abs() < 1e-10);
        assert!(r.c_distribution.iter().all(|p| (p - 1.0 / 3.0).abs() < 1e-10));
    }

    #[test]
    fn weights_are_recovered_from_either_branch() {
        let input = [c(0.6, 0.0), c(0.0, 0.48), c(0.64, 0.0)];
        for bound in [true, false] {
            let dist = if bound { success_distribution(&input) } else { failure_distribution(&input) };
            let back = recover_input_weights(bound, &dist);
            for j in 0..3 {
                assert!((back[j] - input[j].norm_sqr()).abs() < 1e-12);
            }
        }
    }
}
