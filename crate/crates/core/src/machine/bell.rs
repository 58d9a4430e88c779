//! Coarse-grained Bell measurement: on the span of `|x_τ y_τ⟩` with
//! `x, y ∈ {1_τ, 2_τ}`, the binding PVM acts as the two-outcome measurement
//! `{|Ψ⁺⟩⟨Ψ⁺| + |Ψ⁻⟩⟨Ψ⁻|, |Φ⁺⟩⟨Φ⁺| + |Φ⁻⟩⟨Φ⁻|}` once `1_τ → 0`, `2_τ → 1`.

use num_complex::Complex;
use serde::Serialize;

use crate::qstate::kernel;
use crate::scalar::Scalar;
use crate::spin::{charge_element, ChargeBasisElement, C_CYCLE};

#[derive(Clone, Debug, Serialize)]
pub struct BellCheck {
    pub one: String,
    pub two: String,
    /// `⟨b_i|Π_AB|b_j⟩` in the relabeled basis `00, 01, 10, 11`.
    pub bind_block: [[f64; 4]; 4],
    /// Largest deviation from the Bell-projector form, including leakage of
    /// `Π_AB|b_j⟩` out of the span.
    pub max_deviation: f64,
    pub pass: bool,
}

/// Checks the Bell-projector form for one choice of `|1_τ⟩` (a `τ = 1`
/// element) and `|2_τ⟩` (a `τ = 2` element).
pub fn coarse_bell_check<T: Scalar>(one: &ChargeBasisElement<T>, two: &ChargeBasisElement<T>) -> BellCheck {
    let product = |x: &ChargeBasisElement<T>, y: &ChargeBasisElement<T>| -> Vec<Complex<T>> {
        x.vector.iter().flat_map(|a| y.vector.iter().map(move |b| a * b)).collect()
    };
    let basis = [product(one, one), product(one, two), product(two, one), product(two, two)];
    let a: Vec<usize> = (0..6).collect();
    let b: Vec<usize> = (6..12).collect();
    let projected: Vec<Vec<Complex<T>>> =
        basis.iter().map(|v| kernel::binding_project(v, 12, &a, &b, &C_CYCLE, false)).collect();
    let expected = [0.0, 1.0, 1.0, 0.0];
    let mut block = [[0.0; 4]; 4];
    let mut worst: f64 = 0.0;
    for j in 0..4 {
        let mut captured = 0.0;
        for i in 0..4 {
            let z = kernel::inner(&basis[i], &projected[j]);
            block[i][j] = z.re.as_f64();
            captured += z.norm_sqr().as_f64();
            let target = if i == j { expected[i] } else { 0.0 };
            worst = worst.max((Complex::new(z.re.as_f64(), z.im.as_f64()) - target).norm());
        }
        let total: f64 = projected[j].iter().map(|z| z.norm_sqr().as_f64()).sum();
        worst = worst.max((total - captured).abs());
    }
    BellCheck {
        one: one.name(),
        two: two.name(),
        bind_block: block,
        max_deviation: worst,
        pass: worst < T::op_tol().as_f64(),
    }
}

/// The four choices formed from the first two elements of each nonzero
/// sector table.
pub fn coarse_bell_check_all<T: Scalar>() -> Vec<BellCheck> {
    let mut out = Vec::new();
    for k1 in 1..=2 {
        for k2 in 1..=2 {
            let one = charge_element::<T>(1, k1).expect("table entry");
            let two = charge_element::<T>(2, k2).expect("table entry");
            out.push(coarse_bell_check(&one, &two));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_four_choices_reduce_to_bell_projectors() {
        for check in coarse_bell_check_all::<f64>() {
            assert!(check.pass, "{check:?}");
            assert!((check.bind_block[1][1] - 1.0).abs() < 1e-12);
            assert!(check.bind_block[0][0].abs() < 1e-12);
        }
    }
}
