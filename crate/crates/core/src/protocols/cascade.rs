//! Driving several Posners into the `τ = 0` sector with binding measurements.
//!
//! Binding `A`–`B`, then `B`–`C`, then `C`–`A` leaves the product
//! `Π_CA Π_BC Π_AB = Π_{τ_A=0} Π_{τ_B=0} Π_{τ_C=0}`; every further Posner is
//! then bound to the already-projected `A`, which forces it into `τ = 0`.

use num_complex::Complex;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::machine::{BindingOutcome, Machine};
use crate::qstate::{kernel, Selection};
use crate::rng::{stream, stream_seed};
use crate::scalar::{c_zero, Scalar};
use crate::spin::{build_charge_basis, C_CYCLE};

#[derive(Clone, Debug, Serialize)]
pub struct CascadeStep {
    pub a: String,
    pub b: String,
    pub bound: bool,
    pub p_bind: f64,
    pub probability: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CascadeReport {
    pub steps: Vec<CascadeStep>,
    /// `true` when every scheduled binding succeeded.
    pub complete: bool,
    /// `Tr(Π_{τ=0} ρ)` for each register after the last step.
    pub tau_zero_weights: Vec<f64>,
}

/// The binding schedule for registers `names`: a triangle on the first
/// three, then each remaining register against the first.
pub fn cascade_schedule(names: &[&str]) -> Result<Vec<(String, String)>> {
    if names.len() < 3 {
        return Err(Error::InvalidArgument(format!("the cascade needs at least 3 Posners, got {}", names.len())));
    }
    let mut pairs = vec![(names[0], names[1]), (names[1], names[2]), (names[2], names[0])];
    pairs.extend(names[3..].iter().map(|d| (*d, names[0])));
    Ok(pairs.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect())
}

/// Runs the cascade on registers of `machine`, separating each pair after
/// it binds. With `force_success` every binding is postselected; otherwise
/// outcomes are sampled and the cascade stops at the first failure.
pub fn tau_zero_cascade<T: Scalar>(
    machine: &mut Machine<T>,
    names: &[&str],
    force_success: bool,
    seed: u64,
) -> Result<CascadeReport> {
    let mut steps = Vec::new();
    let mut complete = true;
    for (i, (a, b)) in cascade_schedule(names)?.into_iter().enumerate() {
        let selection = if force_success { Selection::Force(0) } else { Selection::Seed(stream_seed(seed, i as u64)) };
        let BindingOutcome { bound, probability, p_bind } = machine.attempt_binding(&a, &b, selection)?;
        steps.push(CascadeStep { a: a.clone(), b: b.clone(), bound, p_bind: p_bind.as_f64(), probability: probability.as_f64() });
        if !bound {
            complete = false;
            break;
        }
        machine.separate(&a, &b)?;
    }
    let tau_zero_weights =
        names.iter().map(|n| machine.sector_weights(n).map(|w| w[0].as_f64())).collect::<Result<Vec<_>>>()?;
    Ok(CascadeReport { steps, complete, tau_zero_weights })
}

/// `Σ_k |c^k_{τ=0}⟩⟨c^k_{τ=0}|` assembled from the charge basis table.
pub fn table_tau_zero_projector<T: Scalar>() -> Result<Matrix<T>> {
    let mut p = Matrix::zeros(64);
    for e in build_charge_basis::<T>().into_iter().filter(|e| e.tau == 0) {
        p = p.add(&Matrix::outer(&e.vector, &e.vector)?)?;
    }
    Ok(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct CascadeIdentityCheck {
    pub n_states: usize,
    /// `max ‖Π_CA Π_BC Π_AB ψ − (P₀⊗P₀⊗P₀) ψ‖`.
    pub max_deviation: f64,
    /// `max ‖Π_CA Π_BC Π_AB (I − P₀⊗P₀⊗P₀) ψ‖`: the sector cross terms.
    pub max_cross_term: f64,
    pub pass: bool,
}

/// Random 18-qubit pure vector (unnormalized Gaussian entries, normalized).
fn random_vector<T: Scalar>(nbits: usize, seed: u64, index: u64) -> Vec<Complex<T>> {
    let mut rng = stream(seed, index);
    let mut v: Vec<Complex<T>> = (0..1usize << nbits)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex::new(T::lit(re), T::lit(im))
        })
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    v.iter_mut().for_each(|z| *z = z.unscale(norm));
    v
}

fn distance<T: Scalar>(u: &[Complex<T>], v: &[Complex<T>]) -> f64 {
    u.iter().zip(v).map(|(a, b)| (a - b).norm_sqr()).sum::<T>().sqrt().as_f64()
}

/// Checks the triangle identity on `n_states` random 18-qubit vectors: the
/// left side uses the permutation form of each binding projector, the right
/// side the dense table-basis `P₀` on each register.
pub fn check_cascade_identity<T: Scalar>(n_states: usize, seed: u64) -> Result<CascadeIdentityCheck> {
    const N: usize = 18;
    let regs: [Vec<usize>; 3] = [(0..6).collect(), (6..12).collect(), (12..18).collect()];
    let p0 = table_tau_zero_projector::<T>()?;
    let (mut max_deviation, mut max_cross_term) = (0.0f64, 0.0f64);
    for i in 0..n_states {
        let psi = random_vector::<T>(N, seed, i as u64);
        let chain = |v: &[Complex<T>]| {
            let ab = kernel::binding_project(v, N, &regs[0], &regs[1], &C_CYCLE, false);
            let bc = kernel::binding_project(&ab, N, &regs[1], &regs[2], &C_CYCLE, false);
            kernel::binding_project(&bc, N, &regs[2], &regs[0], &C_CYCLE, false)
        };
        let left = chain(&psi);
        let right = regs.iter().fold(psi.clone(), |v, r| kernel::apply_local(&v, N, r, &p0, false));
        max_deviation = max_deviation.max(distance(&left, &right));
        let rest: Vec<Complex<T>> = psi.iter().zip(&right).map(|(a, b)| a - b).collect();
        max_cross_term = max_cross_term.max(distance(&chain(&rest), &vec![c_zero(); rest.len()]));
    }
    let tol = T::op_tol().as_f64();
    Ok(CascadeIdentityCheck {
        n_states,
        max_deviation,
        max_cross_term,
        pass: max_deviation < tol && max_cross_term < tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::QState;

    fn random_posner(m: &mut Machine<f64>, name: &str, seed: u64) {
        let s = QState::pure((0..6).collect(), random_vector::<f64>(6, seed, 0)).unwrap();
        let labels = m.prepare_state(&s).unwrap();
        m.form_posner(name, &labels).unwrap();
    }

    #[test]
    fn forced_cascade_projects_three_posners() {
        let mut m = Machine::<f64>::new();
        for (i, n) in ["A", "B", "C"].iter().enumerate() {
            random_posner(&mut m, n, i as u64 + 10);
        }
        let r = tau_zero_cascade(&mut m, &["A", "B", "C"], true, 0).unwrap();
        assert!(r.complete);
        assert!(r.tau_zero_weights.iter().all(|w| (w - 1.0).abs() < 1e-9), "{r:?}");
    }

    #[test]
    fn projected_posner_projects_a_newcomer() {
        let mut m = Machine::<f64>::new();
        random_posner(&mut m, "A", 1);
        random_posner(&mut m, "D", 2);
        m.bind_to_reference("A", Selection::Force(0)).unwrap();
        let before = m.sector_weights("D").unwrap()[0];
        let out = m.attempt_binding("D", "A", Selection::Force(0)).unwrap();
        assert!((out.p_bind - before).abs() < 1e-12);
        assert!((m.sector_weights("D").unwrap()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_identity_on_a_few_states() {
        let r = check_cascade_identity::<f64>(3, 5).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn short_schedules_are_rejected() {
        assert!(cascade_schedule(&["A", "B"]).is_err());
        assert_eq!(cascade_schedule(&["A", "B", "C", "D"]).unwrap()[3], ("D".to_string(), "A".to_string()));
    }
}
