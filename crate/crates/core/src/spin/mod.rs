//! Spin observables, the cyclic permutation charge `C` and its sectors.
//!
//! `ħ = 1`, spin operators are `S = σ/2`, and a spin-up qubit is `|0⟩`.

mod basis;
mod sector;
mod tables;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qstate::DenseOperator;
use crate::scalar::{c_one, c_real, c_zero, omega_pow, Scalar};
use crate::Label;

pub use basis::{
    build_charge_basis, build_trio_basis, charge_element, trio_vector, ChargeBasisElement, TrioBasisElement,
    TrioName,
};
pub use sector::{apply_c, project_sector, sector_weights};
pub use tables::{charge_table_csv, trio_table_csv};

/// `C` on a Posner: `|m₁m₂m₃m₄m₅m₆⟩ → |m₃m₁m₂m₆m₄m₅⟩`. Entry `k` names the
/// input slot whose bit lands in output slot `k`.
pub const C_CYCLE: [usize; 6] = [2, 0, 1, 5, 3, 4];
/// The same cycle on a single trio: `|m₁m₂m₃⟩ → |m₃m₁m₂⟩`.
pub const TRIO_CYCLE: [usize; 3] = [2, 0, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn unit<T: Scalar>(self) -> [T; 3] {
        let (o, z) = (T::one(), T::zero());
        match self {
            Axis::X => [o, z, z],
            Axis::Y => [z, o, z],
            Axis::Z => [z, z, o],
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

pub fn pauli_matrix<T: Scalar>(axis: Axis) -> Matrix<T> {
    let (o, z, i) = (c_one::<T>(), c_zero::<T>(), Complex::new(T::zero(), T::one()));
    let entries = match axis {
        Axis::X => vec![z, o, o, z],
        Axis::Y => vec![z, -i, i, z],
        Axis::Z => vec![o, z, z, -o],
    };
    Matrix::from_vec(2, entries).expect("2x2 literal")
}

pub fn build_pauli<T: Scalar>(axis: Axis, label: Label) -> DenseOperator<T> {
    DenseOperator::new(pauli_matrix(axis), vec![label]).expect("single-qubit operator")
}

/// `exp(−i(θ/2) n̂·σ)`.
pub fn rotation_matrix<T: Scalar>(axis: [T; 3], theta: T) -> Result<Matrix<T>> {
    let norm = axis.iter().map(|a| *a * *a).sum::<T>().sqrt();
    if (norm - T::one()).abs() > T::axis_tol() {
        return Err(Error::NonUnitAxis(norm.as_f64()));
    }
    let half = theta / T::lit(2.0);
    let (c, s) = (half.cos(), half.sin());
    let mut m = Matrix::identity(2).scale(c_real(c));
    for (a, axis_kind) in axis.iter().zip(Axis::ALL) {
        let term = pauli_matrix::<T>(axis_kind).scale(Complex::new(T::zero(), -s * *a));
        m = m.add(&term)?;
    }
    Ok(m)
}

pub fn build_rotation<T: Scalar>(axis: [T; 3], theta: T, label: Label) -> Result<DenseOperator<T>> {
    DenseOperator::new(rotation_matrix(axis, theta)?, vec![label])
}

/// Permutation matrix of the basis map whose output bit `k` is input bit
/// `perm[k]` (big-endian bit order).
pub fn permutation_matrix<T: Scalar>(perm: &[usize]) -> Matrix<T> {
    let k = perm.len();
    let dim = 1usize << k;
    let mut m = Matrix::zeros(dim);
    for x in 0..dim {
        let y = (0..k).fold(0usize, |y, slot| y | (((x >> (k - 1 - perm[slot])) & 1) << (k - 1 - slot)));
        m.set(y, x, c_one());
    }
    m
}

fn cycle_for(arity: usize) -> Result<&'static [usize]> {
    match arity {
        6 => Ok(&C_CYCLE),
        3 => Ok(&TRIO_CYCLE),
        got => Err(Error::Arity { expected: 6, got }),
    }
}

/// The 64-dimensional permutation `C` on six ordered labels.
pub fn build_c_operator<T: Scalar>(labels: &[Label]) -> Result<DenseOperator<T>> {
    if labels.len() != 6 {
        return Err(Error::Arity { expected: 6, got: labels.len() });
    }
    DenseOperator::new(permutation_matrix(&C_CYCLE), labels.to_vec())
}

/// `Π_{τ=j} = (1/3) Σ_k ω^{−jk} C^k` on six labels (or the trio analogue on
/// three labels).
pub fn build_tau_projector<T: Scalar>(j: u8, labels: &[Label]) -> Result<DenseOperator<T>> {
    if j > 2 {
        return Err(Error::InvalidArgument(format!("sector label {j} is not in {{0,1,2}}")));
    }
    let c = permutation_matrix::<T>(cycle_for(labels.len())?);
    let c2 = c.matmul(&c)?;
    let third = T::lit(1.0 / 3.0);
    let m = Matrix::identity(c.dim())
        .add(&c.scale(omega_pow(-(j as i64))))?
        .add(&c2.scale(omega_pow(-2 * j as i64)))?
        .scale(c_real(third));
    DenseOperator::new(m, labels.to_vec())
}

/// `Σ_i σ^axis_i / 2` over the labels.
pub fn build_spin_component<T: Scalar>(axis: Axis, labels: &[Label]) -> Result<DenseOperator<T>> {
    let k = labels.len();
    let dim = 1usize << k;
    let mut total = Matrix::zeros(dim);
    let half = c_real(T::lit(0.5));
    for i in 0..k {
        let mut term = Matrix::identity(1);
        for j in 0..k {
            term = term.kron(&if i == j { pauli_matrix(axis) } else { Matrix::identity(2) });
        }
        total = total.add(&term.scale(half))?;
    }
    DenseOperator::new(total, labels.to_vec())
}

/// Total `S^z` of the labels.
pub fn build_sz_total<T: Scalar>(labels: &[Label]) -> Result<DenseOperator<T>> {
    build_spin_component(Axis::Z, labels)
}

/// `(Σ_i S_i)²` over any set of labels.
pub fn build_s2<T: Scalar>(labels: &[Label]) -> Result<DenseOperator<T>> {
    let mut total = DenseOperator::new(Matrix::zeros(1 << labels.len()), labels.to_vec())?;
    for axis in Axis::ALL {
        let s = build_spin_component::<T>(axis, labels)?;
        total = total.add(&s.compose(&s)?)?;
    }
    Ok(total)
}

/// `S²` of a trio (three labels).
pub fn build_s2_trio<T: Scalar>(labels: &[Label]) -> Result<DenseOperator<T>> {
    if labels.len() != 3 {
        return Err(Error::Arity { expected: 3, got: labels.len() });
    }
    build_s2(labels)
}

/// Projector onto total spin `3/2` of a trio: `(S² − 3/4)/3`.
pub fn build_quartet_projector<T: Scalar>(labels: &[Label]) -> Result<DenseOperator<T>> {
    let s2 = build_s2_trio::<T>(labels)?;
    let shifted = s2.add(&DenseOperator::identity(labels.to_vec())?.scale(c_real(T::lit(-0.75))))?;
    Ok(shifted.scale(c_real(T::lit(1.0 / 3.0))))
}

/// `S²₁₂₃ ⊗ S²₄₅₆` on a Posner's six labels.
pub fn build_s2_product<T: Scalar>(labels: &[Label]) -> Result<DenseOperator<T>> {
    if labels.len() != 6 {
        return Err(Error::Arity { expected: 6, got: labels.len() });
    }
    crate::qstate::kron(&build_s2_trio(&labels[..3])?, &build_s2_trio(&labels[3..])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{apply, QState};

    const POSNER: [Label; 6] = [0, 1, 2, 3, 4, 5];

    #[test]
    fn c_moves_first_spin_to_second_slot() {
        let c = build_c_operator::<f64>(&POSNER).unwrap();
        let s = QState::from_bits(POSNER.to_vec(), &[1, 0, 0, 0, 0, 0]).unwrap();
        let out = apply(&c, &s).unwrap();
        assert_eq!(out, QState::from_bits(POSNER.to_vec(), &[0, 1, 0, 0, 0, 0]).unwrap());
    }

    #[test]
    fn c_has_order_three() {
        let c = build_c_operator::<f64>(&POSNER).unwrap();
        let c3 = c.compose(&c).unwrap().compose(&c).unwrap();
        assert_eq!(c3.matrix(), &Matrix::identity(64));
    }

    #[test]
    fn sector_ranks_are_24_20_20() {
        let ranks: Vec<usize> =
            (0..3).map(|j| build_tau_projector::<f64>(j, &POSNER).unwrap().matrix().rank(1e-9)).collect();
        assert_eq!(ranks, vec![24, 20, 20]);
    }

    #[test]
    fn c_acts_as_omega_on_tau_one() {
        let c = build_c_operator::<f64>(&POSNER).unwrap();
        let p1 = build_tau_projector::<f64>(1, &POSNER).unwrap();
        let lhs = c.compose(&p1).unwrap();
        let rhs = p1.scale(omega_pow(1));
        assert!(lhs.matrix().max_abs_diff(rhs.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn rotation_about_y_by_half_pi_makes_plus() {
        let r = build_rotation([0.0, 1.0, 0.0], std::f64::consts::FRAC_PI_2, 0).unwrap();
        let out = apply(&r, &QState::basis(vec![0], 0).unwrap()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = QState::pure(vec![0], vec![Complex::new(h, 0.0); 2]).unwrap();
        assert!((out.overlap_modulus(&plus).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_by_pi_flips_spin() {
        let r = build_rotation([0.0, 1.0, 0.0], std::f64::consts::PI, 0).unwrap();
        let out = apply(&r, &QState::basis(vec![0], 0).unwrap()).unwrap();
        assert!((out.overlap_modulus(&QState::basis(vec![0], 1).unwrap()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_unit_axis_is_rejected() {
        assert!(matches!(rotation_matrix([1.0, 1.0, 0.0], 0.3), Err(Error::NonUnitAxis(_))));
    }

    #[test]
    fn all_up_has_sz_three() {
        let sz = build_sz_total::<f64>(&POSNER).unwrap();
        assert!((sz.matrix().get(0, 0).re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn trio_spin_multiplicities() {
        let ev = build_s2_trio::<f64>(&[0, 1, 2]).unwrap().matrix().hermitian_eigenvalues();
        let low = ev.iter().filter(|e| (*e - 0.75).abs() < 1e-9).count();
        let high = ev.iter().filter(|e| (*e - 3.75).abs() < 1e-9).count();
        assert_eq!((low, high), (4, 4));
    }

    #[test]
    fn six_spin_decomposition_multiplicities() {
        let ev = build_s2::<f64>(&POSNER).unwrap().matrix().hermitian_eigenvalues();
        let count = |j: f64| ev.iter().filter(|e| (*e - j * (j + 1.0)).abs() < 1e-9).count();
        assert_eq!([count(0.0), count(1.0), count(2.0), count(3.0)], [5, 27, 25, 7]);
    }
}
