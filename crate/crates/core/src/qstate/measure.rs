//! Projective and Kraus measurements with Born-rule sampling.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qstate::factored::{self, DenseMap};
use crate::qstate::{kernel, DenseOperator, QState, StateKind};
use crate::scalar::Scalar;

/// How a measurement outcome is chosen.
pub enum Selection<'a> {
    /// Born-rule sample from a fresh generator seeded with this value.
    Seed(u64),
    /// Born-rule sample from a caller-owned generator.
    Rng(&'a mut dyn RngCore),
    /// Postselect on the given outcome.
    Force(usize),
}

/// Result of a measurement: the chosen outcome, its probability, the full
/// probability list and the renormalized post-measurement state.
#[derive(Clone, Debug)]
pub struct Measurement<T> {
    pub outcome: usize,
    pub probability: T,
    pub probabilities: Vec<T>,
    pub post_state: QState<T>,
}

/// Number of random probes used to test idempotence of large projectors.
const PROBES: usize = 4;
/// Projectors up to this dimension are checked by explicit squaring.
const MAX_EXACT_PROJECTOR_DIM: usize = 256;

pub(crate) fn choose<T: Scalar>(probabilities: &[T], selection: Selection<'_>) -> Result<usize> {
    let outcome = match selection {
        Selection::Force(k) => {
            if k >= probabilities.len() {
                return Err(Error::InvalidArgument(format!("no outcome {k}")));
            }
            k
        }
        Selection::Seed(seed) => sample(probabilities, &mut ChaCha8Rng::seed_from_u64(seed)),
        Selection::Rng(rng) => sample(probabilities, rng),
    };
    let p = probabilities[outcome];
    if p <= T::state_tol() {
        return Err(Error::ZeroProbability { outcome, probability: p.as_f64() });
    }
    Ok(outcome)
}

fn sample<T: Scalar, R: RngCore + ?Sized>(probabilities: &[T], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = 0;
    for (k, p) in probabilities.iter().enumerate() {
        let p = p.as_f64();
        if p > 0.0 {
            last = k;
        }
        acc += p;
        if u < acc {
            return k;
        }
    }
    last
}

fn validate_pvm<T: Scalar>(projectors: &[DenseOperator<T>]) -> Result<()> {
    let first = projectors
        .first()
        .ok_or_else(|| Error::InvalidArgument("a PVM needs at least one projector".into()))?;
    let dim = first.matrix().dim();
    let mut total = Matrix::zeros(dim);
    for (index, p) in projectors.iter().enumerate() {
        if p.targets() != first.targets() {
            return Err(Error::InvalidArgument("all projectors must act on the same labels".into()));
        }
        let m = p.matrix();
        let deviation = if dim <= MAX_EXACT_PROJECTOR_DIM {
            m.idempotency_error()?.max(m.hermiticity_error())
        } else {
            probe_idempotency(m)?.max(m.hermiticity_error())
        };
        if deviation > T::op_tol() {
            return Err(Error::NotProjector { index, deviation: deviation.as_f64() });
        }
        total = total.add(m)?;
    }
    let deviation = total.max_abs_diff(&Matrix::identity(dim))?;
    if deviation > T::op_tol() {
        return Err(Error::IncompletePvm(deviation.as_f64()));
    }
    Ok(())
}

/// `max |P(Pv) − Pv|` over a few fixed-seed random vectors.
fn probe_idempotency<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = T::zero();
    for _ in 0..PROBES {
        let v: Vec<_> = (0..m.dim())
            .map(|_| num_complex::Complex::new(T::lit(rng.random::<f64>() - 0.5), T::lit(rng.random::<f64>() - 0.5)))
            .collect();
        let pv = m.apply(&v)?;
        let ppv = m.apply(&pv)?;
        worst = pv.iter().zip(&ppv).fold(worst, |w, (a, b)| w.max((a - b).norm()));
    }
    Ok(worst)
}

fn outcome_probabilities<T: Scalar>(s: &QState<T>, projectors: &[DenseOperator<T>]) -> Result<Vec<T>> {
    let positions = s.positions(projectors[0].targets())?;
    Ok(projectors
        .iter()
        .map(|p| {
            let map = DenseMap { positions: positions.clone(), matrix: p.matrix() };
            factored::weight(s, &map).re.max(T::zero())
        })
        .collect())
}

/// Born probabilities of a complete projective measurement.
pub fn pvm_probabilities<T: Scalar>(s: &QState<T>, projectors: &[DenseOperator<T>]) -> Result<Vec<T>> {
    validate_pvm(projectors)?;
    outcome_probabilities(s, projectors)
}

/// Projective measurement with the Lüders update `PρP / Tr(Pρ)`.
pub fn measure_pvm<T: Scalar>(
    s: &QState<T>,
    projectors: &[DenseOperator<T>],
    selection: Selection<'_>,
) -> Result<Measurement<T>> {
    let probabilities = pvm_probabilities(s, projectors)?;
    let outcome = choose(&probabilities, selection)?;
    let positions = s.positions(projectors[outcome].targets())?;
    let map = DenseMap { positions, matrix: projectors[outcome].matrix() };
    let post_state = s.renormalized_like(factored::sandwich(s, &map))?;
    Ok(Measurement { outcome, probability: probabilities[outcome], probabilities, post_state })
}

/// Generalized measurement with Kraus operators `K_i`: outcome `i` with
/// probability `‖K_i ψ‖²` (or `Tr(K_i ρ K_i†)`) and post-state `K_i ψ`
/// renormalized. Completeness is the caller's responsibility.
pub fn measure_kraus<T: Scalar>(
    s: &QState<T>,
    kraus: &[DenseOperator<T>],
    selection: Selection<'_>,
) -> Result<Measurement<T>> {
    if kraus.is_empty() {
        return Err(Error::InvalidArgument("no Kraus operators".into()));
    }
    let mut branches = Vec::with_capacity(kraus.len());
    let mut probabilities = Vec::with_capacity(kraus.len());
    for k in kraus {
        let positions = s.positions(k.targets())?;
        let map = DenseMap { positions, matrix: k.matrix() };
        let left = factored::left(s, &map);
        let data = match s.kind() {
            StateKind::Pure => left,
            StateKind::Mixed => {
                // K ρ K†: conjugated K on the column bits.
                let cols: Vec<usize> = map.positions.iter().map(|p| p + s.n()).collect();
                kernel::apply_local(&left, 2 * s.n(), &cols, k.matrix(), true)
            }
        };
        let p = match s.kind() {
            StateKind::Pure => data.iter().map(|a| a.norm_sqr()).sum::<T>(),
            StateKind::Mixed => kernel::trace(&data, s.dim()).re,
        };
        probabilities.push(p.max(T::zero()));
        branches.push(data);
    }
    let outcome = choose(&probabilities, selection)?;
    let post_state = s.renormalized_like(branches.swap_remove(outcome))?;
    Ok(Measurement { outcome, probability: probabilities[outcome], probabilities, post_state })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c_one, c_zero};
    use num_complex::Complex;

    fn z_projectors() -> Vec<DenseOperator<f64>> {
        vec![
            DenseOperator::new(Matrix::diagonal(&[1.0, 0.0]), vec![0]).unwrap(),
            DenseOperator::new(Matrix::diagonal(&[0.0, 1.0]), vec![0]).unwrap(),
        ]
    }

    #[test]
    fn plus_state_gives_even_odds() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = QState::pure(vec![0], vec![Complex::new(h, 0.0); 2]).unwrap();
        let p = pvm_probabilities(&plus, &z_projectors()).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
        let m = measure_pvm(&plus, &z_projectors(), Selection::Force(1)).unwrap();
        assert_eq!(m.post_state.data(), &[c_zero(), c_one()]);
    }

    #[test]
    fn incomplete_pvm_is_rejected() {
        let one = vec![z_projectors().remove(0)];
        let s = QState::<f64>::basis(vec![0], 0).unwrap();
        assert!(matches!(pvm_probabilities(&s, &one), Err(Error::IncompletePvm(_))));
    }

    #[test]
    fn forcing_impossible_outcome_fails() {
        let s = QState::<f64>::basis(vec![0], 0).unwrap();
        let r = measure_pvm(&s, &z_projectors(), Selection::Force(1));
        assert!(matches!(r, Err(Error::ZeroProbability { .. })));
    }

    #[test]
    fn kraus_on_mixed_state_matches_lueders() {
        let s = QState::<f64>::maximally_mixed(vec![0]).unwrap();
        let m = measure_kraus(&s, &z_projectors(), Selection::Force(0)).unwrap();
        assert!((m.probability - 0.5).abs() < 1e-12);
        assert!((m.post_state.data()[0].re - 1.0).abs() < 1e-12);
    }
}
