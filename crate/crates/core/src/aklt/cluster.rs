//! Measurements that reduce AKLT′ toward a cluster-type resource: the site
//! spin test `S²₁₂₃ ⊗ S²₄₅₆` and the three-outcome POVM on a spin-3/2 trio.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::machine::singlet;
use crate::qstate::{expectation_real, kron, measure_kraus, measure_pvm, pvm_probabilities, DenseOperator, QState, Selection};
use crate::scalar::{c_real, Scalar};
use crate::spin::{build_pauli, build_quartet_projector, build_tau_projector, Axis};
use crate::Label;

/// Threshold on `⟨Π_{3/2}⟩` below which a POVM input is flagged.
pub const QUARTET_WARN_TOL: f64 = 1e-6;

/// `{Π_{3/2} ⊗ Π_{3/2}, I − Π_{3/2} ⊗ Π_{3/2}}` on a Posner's labels.
pub fn site_spin_pvm<T: Scalar>(register: &[Label]) -> Result<[DenseOperator<T>; 2]> {
    if register.len() != 6 {
        return Err(Error::Arity { expected: 6, got: register.len() });
    }
    let both = kron(&build_quartet_projector(&register[..3])?, &build_quartet_projector(&register[3..])?)?;
    let rest = DenseOperator::identity(register.to_vec())?.add(&both.scale(c_real(-T::one())))?;
    Ok([both, rest])
}

#[derive(Clone, Debug)]
pub struct SiteSpinOutcome<T> {
    /// Both trios found in `s = 3/2`.
    pub three_halves_pair: bool,
    pub probability: T,
    /// Probability of the `3/2 ⊗ 3/2` outcome.
    pub p_success: T,
    pub post_state: QState<T>,
}

pub fn measure_site_spin<T: Scalar>(s: &QState<T>, register: &[Label], selection: Selection<'_>) -> Result<SiteSpinOutcome<T>> {
    let m = measure_pvm(s, &site_spin_pvm(register)?, selection)?;
    Ok(SiteSpinOutcome {
        three_halves_pair: m.outcome == 0,
        probability: m.probability,
        p_success: m.probabilities[0],
        post_state: m.post_state,
    })
}

/// `P(3/2 ⊗ 3/2)` without measuring.
pub fn site_spin_probability<T: Scalar>(s: &QState<T>, register: &[Label]) -> Result<T> {
    Ok(pvm_probabilities(s, &site_spin_pvm(register)?)?[0])
}

fn product_ket<T: Scalar>(single: [Complex<T>; 2]) -> Vec<Complex<T>> {
    (0..8).map(|x| single[x >> 2] * single[(x >> 1) & 1] * single[x & 1]).collect()
}

/// `F_x, F_y, F_z` on a trio: `F_α = √(2/3) (|↑↑↑⟩⟨↑↑↑| + |↓↓↓⟩⟨↓↓↓|)` with
/// `↑, ↓` the eigenstates of `σ^α`.
pub fn povm_f_operators<T: Scalar>(trio: &[Label]) -> Result<[DenseOperator<T>; 3]> {
    if trio.len() != 3 {
        return Err(Error::Arity { expected: 3, got: trio.len() });
    }
    let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let (r, i) = (Complex::new(h, T::zero()), Complex::new(T::zero(), h));
    let z = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let pairs = [[[r, r], [r, -r]], [[r, i], [r, -i]], [[one, z], [z, one]]];
    let scale = c_real(T::lit((2.0f64 / 3.0).sqrt()));
    let build = |[up, down]: [[Complex<T>; 2]; 2]| -> Result<DenseOperator<T>> {
        let (u, d) = (product_ket(up), product_ket(down));
        let m = Matrix::outer(&u, &u)?.add(&Matrix::outer(&d, &d)?)?.scale(scale);
        DenseOperator::new(m, trio.to_vec())
    };
    Ok([build(pairs[0])?, build(pairs[1])?, build(pairs[2])?])
}

/// `max |Q (Σ_α F_α† F_α) Q − Q|` for the quartet projector `Q`.
pub fn povm_completeness_error<T: Scalar>() -> Result<T> {
    let trio = [0, 1, 2];
    let q = build_quartet_projector::<T>(&trio)?.matrix().clone();
    let mut total = Matrix::zeros(8);
    for f in povm_f_operators::<T>(&trio)? {
        total = total.add(&f.matrix().adjoint().matmul(f.matrix())?)?;
    }
    q.matmul(&total)?.matmul(&q)?.max_abs_diff(&q)
}

#[derive(Clone, Debug)]
pub struct PovmOutcome<T> {
    pub axis: Axis,
    pub probability: T,
    /// Probabilities of `x, y, z`.
    pub probabilities: [T; 3],
    pub post_state: QState<T>,
    /// Set when the trio is not confined to `s = 3/2`.
    pub warning: bool,
}

pub fn measure_povm_f<T: Scalar>(s: &QState<T>, trio: &[Label], selection: Selection<'_>) -> Result<PovmOutcome<T>> {
    let quartet = expectation_real(s, &build_quartet_projector(trio)?)?;
    let m = measure_kraus(s, &povm_f_operators(trio)?, selection)?;
    Ok(PovmOutcome {
        axis: Axis::ALL[m.outcome],
        probability: m.probability,
        probabilities: [m.probabilities[0], m.probabilities[1], m.probabilities[2]],
        post_state: m.post_state,
        warning: quartet < T::one() - T::lit(QUARTET_WARN_TOL),
    })
}

/// One Posner whose triangles share a singlet (qubits 2 and 5) and whose
/// other four legs are maximally mixed.
pub fn footnote_state<T: Scalar>() -> Result<QState<T>> {
    let legs = QState::maximally_mixed(vec![0, 1, 3, 4])?;
    singlet::<T>(2, 5).to_mixed()?.tensor(&legs)?.reorder(&[0, 1, 2, 3, 4, 5])
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FootnoteStatistics {
    /// `Tr(Π_{τ=0} ρ)`.
    pub tau_zero_weight: f64,
    /// `P(3/2 ⊗ 3/2)` after projecting onto `τ = 0`.
    pub three_halves_pair: f64,
}

pub fn footnote_statistics<T: Scalar>() -> Result<FootnoteStatistics> {
    let reg = [0, 1, 2, 3, 4, 5];
    let rho = footnote_state::<T>()?;
    let p0 = build_tau_projector::<T>(0, &reg)?;
    let rest = DenseOperator::identity(reg.to_vec())?.add(&p0.scale(c_real(-T::one())))?;
    let m = measure_pvm(&rho, &[p0, rest], Selection::Force(0))?;
    Ok(FootnoteStatistics {
        tau_zero_weight: m.probability.as_f64(),
        three_halves_pair: site_spin_probability(&m.post_state, &reg)?.as_f64(),
    })
}

/// `⟨σ^z σ^z⟩` across a singlet joining two trios, after both trios are
/// projected onto `s = 3/2`; the remaining legs are maximally mixed.
pub fn edge_correlation<T: Scalar>() -> Result<T> {
    let legs = QState::maximally_mixed(vec![0, 1, 4, 5])?;
    let rho = singlet::<T>(2, 3).to_mixed()?.tensor(&legs)?.reorder(&[0, 1, 2, 3, 4, 5])?;
    let q = kron(&build_quartet_projector(&[0, 1, 2])?, &build_quartet_projector(&[3, 4, 5])?)?;
    let rest = DenseOperator::identity(q.targets().to_vec())?.add(&q.scale(c_real(-T::one())))?;
    let post = measure_pvm(&rho, &[q, rest], Selection::Force(0))?.post_state;
    expectation_real(&post, &kron(&build_pauli(Axis::Z, 2), &build_pauli(Axis::Z, 3))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn footnote_values() {
        let f = footnote_statistics::<f64>().unwrap();
        assert!((f.tau_zero_weight - 0.375).abs() < 1e-12);
        assert!((f.three_halves_pair - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn all_up_site_is_three_halves() {
        let s = QState::<f64>::basis((0..6).collect(), 0).unwrap();
        assert!((site_spin_probability(&s, &[0, 1, 2, 3, 4, 5]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn povm_on_all_up() {
        let s = QState::<f64>::basis(vec![0, 1, 2], 0).unwrap();
        let m = measure_povm_f(&s, &[0, 1, 2], Selection::Force(2)).unwrap();
        assert!((m.probabilities[2] - 2.0 / 3.0).abs() < 1e-12);
        assert!((m.probabilities[0] - 1.0 / 6.0).abs() < 1e-12);
        assert!((m.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        assert!(!m.warning);
        assert!(povm_completeness_error::<f64>().unwrap() < 1e-10);
    }

    #[test]
    fn povm_flags_non_quartet_input() {
        let w = crate::spin::trio_vector::<f64>(crate::spin::TrioName::Omega);
        let s = QState::pure(vec![0, 1, 2], w.to_vec()).unwrap();
        assert!(measure_povm_f(&s, &[0, 1, 2], Selection::Seed(1)).map(|m| m.warning).unwrap_or(true));
    }

    #[test]
    fn edge_correlation_value() {
        assert!((edge_correlation::<f64>().unwrap() + 25.0 / 81.0).abs() < 1e-12);
    }
}
