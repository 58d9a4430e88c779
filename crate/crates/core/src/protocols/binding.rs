//! Binding probabilities of two Posners whose qubits are linked by singlets.
//!
//! Registers are `A = 0..6` and `B = 6..12`. A pattern lists singlet pairs;
//! every other qubit is maximally mixed (a leg whose partner lies outside the
//! pair). Because `Π_AB = (I + U + U²)/3` with `U = C_A C_B` a qubit
//! permutation, `Tr(Π_AB ρ)` reduces to permuted traces of a product state,
//! which are evaluated factor by factor without forming any 4096-dimensional
//! matrix.

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::Num;
use rand::Rng;
use rand_distr::{Distribution, UnitSphere};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::stream;
use crate::scalar::Scalar;
use crate::spin::{rotation_matrix, C_CYCLE};
use crate::Label;

const QUBITS: usize = 12;

/// Singlet pairs over labels `0..12`, plus labels explicitly marked as
/// entangled with something outside the two Posners.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingletPattern {
    #[serde(default)]
    pub pairs: Vec<(Label, Label)>,
    #[serde(default)]
    pub external: Vec<Label>,
}

impl SingletPattern {
    pub fn new(pairs: Vec<(Label, Label)>) -> Result<Self> {
        let p = Self { pairs, external: Vec::new() };
        p.validate()?;
        Ok(p)
    }

    /// Singlets `(i, i + 6)` for each `i` in `offsets`.
    pub fn cross(offsets: &[usize]) -> Result<Self> {
        Self::new(offsets.iter().map(|&i| (i, i + 6)).collect())
    }

    pub fn validate(&self) -> Result<()> {
        let mut used = [false; QUBITS];
        for &l in self.pairs.iter().flat_map(|(a, b)| [a, b]).chain(&self.external) {
            if l >= QUBITS {
                return Err(Error::UnknownLabel(l));
            }
            if used[l] {
                return Err(Error::InvalidArgument(format!("label {l} appears in more than one link")));
            }
            used[l] = true;
        }
        Ok(())
    }

    fn mixed_labels(&self) -> Vec<Label> {
        (0..QUBITS).filter(|l| !self.pairs.iter().any(|(a, b)| a == l || b == l)).collect()
    }
}

/// A factor of a product density matrix: row-major entries on bit positions.
struct Factor<E> {
    positions: Vec<usize>,
    matrix: Vec<E>,
}

fn local_index(y: usize, positions: &[usize]) -> usize {
    positions.iter().fold(0, |acc, &p| (acc << 1) | ((y >> (QUBITS - 1 - p)) & 1))
}

/// `U^power(y)` for `U = C_A C_B`.
fn permuted(y: usize, power: usize) -> usize {
    let mut out = y;
    for _ in 0..power {
        let prev = out;
        out = 0;
        for reg in [0, 6] {
            for (k, &src) in C_CYCLE.iter().enumerate() {
                let b = (prev >> (QUBITS - 1 - (reg + src))) & 1;
                out |= b << (QUBITS - 1 - (reg + k));
            }
        }
    }
    out
}

/// `Tr(U^power ρ) = Σ_y ρ[y, U^power y]`.
fn permuted_trace<E: Num + Copy>(factors: &[Factor<E>], power: usize) -> E {
    (0..1usize << QUBITS).fold(E::zero(), |acc, y| {
        let x = permuted(y, power);
        let term = factors.iter().fold(E::one(), |t, f| {
            let d = 1usize << f.positions.len();
            t * f.matrix[local_index(y, &f.positions) * d + local_index(x, &f.positions)]
        });
        acc + term
    })
}

fn binding_from_factors<E: Num + Copy>(factors: &[Factor<E>]) -> E {
    let three = E::one() + E::one() + E::one();
    (E::one() + permuted_trace(factors, 1) + permuted_trace(factors, 2)) / three
}

fn pattern_factors<E: Num + Copy>(pattern: &SingletPattern, half: E, singlet: impl Fn(usize) -> Vec<E>) -> Vec<Factor<E>> {
    let z = E::zero();
    let mut factors: Vec<Factor<E>> = pattern
        .pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| Factor { positions: vec![a, b], matrix: singlet(i) })
        .collect();
    factors.extend(pattern.mixed_labels().into_iter().map(|l| Factor { positions: vec![l], matrix: vec![half, z, z, half] }));
    factors
}

/// Exact `Tr(Π_AB ρ)` in rational arithmetic.
pub fn binding_probability_exact(pattern: &SingletPattern) -> Result<Ratio<i64>> {
    pattern.validate()?;
    let (z, h) = (Ratio::from_integer(0), Ratio::new(1, 2));
    let singlet = vec![z, z, z, z, z, h, -h, z, z, -h, h, z, z, z, z, z];
    Ok(binding_from_factors(&pattern_factors(pattern, h, |_| singlet.clone())))
}

/// `Tr(Π_AB ρ)` in floating point.
pub fn binding_probability<T: Scalar>(pattern: &SingletPattern) -> Result<T> {
    let identity: Vec<Matrix<T>> = (0..QUBITS).map(|_| Matrix::identity(2)).collect();
    rotated_binding_probability(pattern, &identity)
}

/// `Tr(Π_AB ρ′)` with `ρ′ = (⊗_l U_l) ρ (⊗_l U_l)†` for one 2×2 unitary per
/// label. Only singlet factors change; the maximally mixed legs are invariant.
pub fn rotated_binding_probability<T: Scalar>(pattern: &SingletPattern, unitaries: &[Matrix<T>]) -> Result<T> {
    pattern.validate()?;
    if unitaries.len() != QUBITS {
        return Err(Error::Arity { expected: QUBITS, got: unitaries.len() });
    }
    let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let singlets: Vec<Vec<Complex<T>>> = pattern
        .pairs
        .iter()
        .map(|&(a, b)| {
            let (ua, ub) = (&unitaries[a], &unitaries[b]);
            // (U_a ⊗ U_b)(|01⟩ − |10⟩)/√2
            let v: Vec<Complex<T>> = (0..4)
                .map(|r| (ua.get(r >> 1, 0) * ub.get(r & 1, 1) - ua.get(r >> 1, 1) * ub.get(r & 1, 0)).scale(h))
                .collect();
            (0..16).map(|i| v[i >> 2] * v[i & 3].conj()).collect()
        })
        .collect();
    let half = Complex::new(T::lit(0.5), T::zero());
    let factors = pattern_factors(pattern, half, |i| singlets[i].clone());
    let p = binding_from_factors(&factors);
    if p.im.abs() > T::op_tol() {
        return Err(Error::Invariant(format!("binding probability has imaginary part {}", p.im)));
    }
    Ok(p.re)
}

/// A Haar-distributed element of SU(2) as `exp(−iθ n̂·σ/2)`: `n̂` uniform
/// on the sphere and `θ ∈ [0, 2π)` with density `∝ sin²(θ/2)`, drawn by
/// rejection from the uniform density.
pub fn haar_rotation<R: Rng + ?Sized>(rng: &mut R) -> ([f64; 3], f64) {
    let axis: [f64; 3] = UnitSphere.sample(rng);
    loop {
        let theta = rng.random::<f64>() * std::f64::consts::TAU;
        if rng.random::<f64>() < (theta / 2.0).sin().powi(2) {
            return (axis, theta);
        }
    }
}

pub fn haar_unitary<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Matrix<T> {
    let (axis, theta) = haar_rotation(rng);
    let norm = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
    rotation_matrix(axis.map(|a| T::lit(a / norm)), T::lit(theta)).expect("normalized axis")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RotationAverage {
    pub mean: f64,
    pub n_samples: usize,
    pub stderr: f64,
}

/// Monte Carlo mean of the binding probability after independent Haar
/// rotations of all twelve qubits. Sample `i` draws from stream `i` of
/// `seed`, and the reduction runs in sample order, so the result does not
/// depend on the thread count.
pub fn random_rotation_average(pattern: &SingletPattern, n_samples: usize, seed: u64) -> Result<RotationAverage> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    pattern.validate()?;
    let samples = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, i as u64);
            let us: Vec<Matrix<f64>> = (0..QUBITS).map(|_| haar_unitary(&mut rng)).collect();
            rotated_binding_probability(pattern, &us)
        })
        .collect::<Result<Vec<f64>>>()?;
    let n = n_samples as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let stderr = if n_samples > 1 {
        (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) / n).sqrt()
    } else {
        0.0
    };
    Ok(RotationAverage { mean, n_samples, stderr })
}

/// Bloch vector of `U|0⟩`.
pub fn bloch_image<T: Scalar>(u: &Matrix<T>) -> [f64; 3] {
    let (a, b) = (u.get(0, 0), u.get(1, 0));
    let ab = a.conj() * b;
    [2.0 * ab.re.as_f64(), 2.0 * ab.im.as_f64(), (a.norm_sqr() - b.norm_sqr()).as_f64()]
}
