//! The one-parameter family `|φ(θ)⟩` and the sector-resolved qutrit basis it
//! induces on a single Posner.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::machine::singlet;
use crate::qstate::{apply, QState};
use crate::scalar::{c_zero, Scalar};
use crate::spin::{build_rotation, project_sector, sector_weights};
use crate::Label;

/// Register labels used for single-Posner states built here.
pub const POSNER: [Label; 6] = [0, 1, 2, 3, 4, 5];

/// Three singlets, two inside the trios `(0,1)`, `(3,4)` and one across
/// `(2,5)`, with qubit 0 then turned by `exp(−iθσ^y)`.
///
/// The sector weights are `(cos 2θ + 2)/6` for `τ = 0` and
/// `(4 − cos 2θ)/12` for each of `τ = 1, 2`; `θ = π/4` balances them.
pub fn prepare_phi_theta<T: Scalar>(theta: T) -> Result<QState<T>> {
    let s = singlet::<T>(0, 1).tensor(&singlet(3, 4))?.tensor(&singlet(2, 5))?.reorder(&POSNER)?;
    let y = [T::zero(), T::one(), T::zero()];
    apply(&build_rotation(y, theta + theta, 0)?, &s)
}

/// Closed-form sector weights of [`prepare_phi_theta`].
pub fn phi_theta_weights(theta: f64) -> [f64; 3] {
    let c = (2.0 * theta).cos();
    [(c + 2.0) / 6.0, (4.0 - c) / 12.0, (4.0 - c) / 12.0]
}

/// Unit vectors `|0_τ⟩, |1_τ⟩, |2_τ⟩` on [`POSNER`], one per sector.
#[derive(Clone, Debug, PartialEq)]
pub struct TauQutritBasis<T> {
    /// Angle of the `|φ(θ)⟩` the basis was cut from, if any.
    pub theta: Option<T>,
    vectors: [Vec<Complex<T>>; 3],
}

impl<T: Scalar> TauQutritBasis<T> {
    /// The normalized sector components of `|φ(θ)⟩`.
    pub fn from_theta(theta: T) -> Result<Self> {
        let phi = prepare_phi_theta(theta)?;
        let mut vectors: [Vec<Complex<T>>; 3] = Default::default();
        for (tau, v) in vectors.iter_mut().enumerate() {
            let (w, post) = project_sector(&phi, &POSNER, tau as u8)?;
            if w <= T::state_tol() {
                return Err(Error::ZeroProbability { outcome: tau, probability: w.as_f64() });
            }
            *v = post.data().to_vec();
        }
        Ok(Self { theta: Some(theta), vectors })
    }

    /// The basis behind `|+_τ⟩`, with all three weights equal.
    pub fn balanced() -> Result<Self> {
        Self::from_theta(T::FRAC_PI_4())
    }

    /// Any three unit vectors with `|j⟩` in sector `j`.
    pub fn from_vectors(vectors: [Vec<Complex<T>>; 3]) -> Result<Self> {
        for (tau, v) in vectors.iter().enumerate() {
            let s = QState::pure(POSNER.to_vec(), v.clone())?;
            let w = sector_weights(&s, &POSNER)?[tau];
            if (w - T::one()).abs() > T::state_tol() {
                return Err(Error::Invariant(format!("basis vector {tau} has sector-{tau} weight {w}")));
            }
        }
        Ok(Self { theta: None, vectors })
    }

    pub fn vector(&self, j: usize) -> &[Complex<T>] {
        &self.vectors[j]
    }

    /// `Σ_j c_j |j_τ⟩` on `labels`; the coefficients must be normalized.
    pub fn encode(&self, coefficients: &[Complex<T>; 3], labels: &[Label]) -> Result<QState<T>> {
        let norm: T = coefficients.iter().map(|c| c.norm_sqr()).sum();
        if (norm - T::one()).abs() > T::state_tol() {
            return Err(Error::Invariant(format!("qutrit coefficients have norm² {norm}")));
        }
        let mut amps = vec![c_zero::<T>(); 64];
        for (c, v) in coefficients.iter().zip(&self.vectors) {
            for (a, x) in amps.iter_mut().zip(v) {
                *a = *a + c * x;
            }
        }
        QState::pure(labels.to_vec(), amps)
    }

    /// `(|0_τ⟩ + |1_τ⟩ + |2_τ⟩)/√3`.
    pub fn plus(&self, labels: &[Label]) -> Result<QState<T>> {
        let c = Complex::new(T::one() / T::lit(3.0).sqrt(), T::zero());
        self.encode(&[c, c, c], labels)
    }
}
