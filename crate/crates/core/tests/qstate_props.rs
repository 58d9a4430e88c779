use num_complex::Complex;
use posner_core::spin::{build_pauli, build_rotation, Axis};
use posner_core::{apply, expectation, kron, measure_pvm, partial_trace, pvm_probabilities, DenseOperator, Matrix, QState, Selection};
use proptest::prelude::*;

fn amplitudes(n: usize) -> impl Strategy<Value = Vec<Complex<f64>>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1 << n)
        .prop_filter("nonzero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(|v| v.into_iter().map(|(a, b)| Complex::new(a, b)).collect())
}

fn pure(n: usize) -> impl Strategy<Value = QState<f64>> {
    amplitudes(n).prop_map(move |a| QState::pure_normalized((0..n).collect(), a).unwrap())
}

fn axis() -> impl Strategy<Value = [f64; 3]> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU)
        .prop_map(|(t, p)| [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()])
}

fn max_diff(a: &QState<f64>, b: &QState<f64>) -> f64 {
    a.data().iter().zip(b.data()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn local_unitary_on_discarded_qubits_leaves_marginal(s in pure(4), n in axis(), theta in -6.0..6.0f64) {
        let before = partial_trace(&s, &[0, 1]).unwrap();
        let u = kron(&build_rotation(n, theta, 2).unwrap(), &build_rotation(n, 2.0 * theta, 3).unwrap()).unwrap();
        let after = partial_trace(&apply(&u, &s).unwrap(), &[0, 1]).unwrap();
        prop_assert!(max_diff(&before, &after) < 1e-9);
        after.check_invariants().unwrap();
    }

    #[test]
    fn complete_pvm_probabilities_sum_to_one(s in pure(3), n in axis(), seed in any::<u64>()) {
        let u = build_rotation(n, 1.1, 1).unwrap();
        let rotate = |p: &Matrix<f64>| {
            let m = u.matrix().matmul(p).unwrap().matmul(&u.matrix().adjoint()).unwrap();
            DenseOperator::new(m, vec![1]).unwrap()
        };
        let pvm = [rotate(&Matrix::diagonal(&[1.0, 0.0])), rotate(&Matrix::diagonal(&[0.0, 1.0]))];
        let p = pvm_probabilities(&s, &pvm).unwrap();
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        let m = measure_pvm(&s, &pvm, Selection::Seed(seed)).unwrap();
        m.post_state.check_invariants().unwrap();
        let mixed = measure_pvm(&s.to_mixed().unwrap(), &pvm, Selection::Force(m.outcome)).unwrap();
        prop_assert!((mixed.probability - m.probability).abs() < 1e-9);
        mixed.post_state.check_invariants().unwrap();
    }

    #[test]
    fn relabeling_preserves_scalars(s in pure(3), perm in Just([2usize, 0, 1]).prop_shuffle()) {
        let op = kron(&build_pauli(Axis::Z, 0), &build_pauli(Axis::X, 2)).unwrap();
        let before = expectation(&s, &op).unwrap();
        // Move each amplitude to the permuted labels, then relabel to match.
        let moved = s.relabel(|l| perm[l] + 10).unwrap();
        let op_moved = DenseOperator::new(op.matrix().clone(), vec![perm[0] + 10, perm[2] + 10]).unwrap();
        let after = expectation(&moved, &op_moved).unwrap();
        prop_assert!((before - after).norm() < 1e-12);
        let reordered = moved.reorder(&[12, 11, 10]).unwrap();
        prop_assert!((expectation(&reordered, &op_moved).unwrap() - before).norm() < 1e-12);
        let rho_a = partial_trace(&s, &[0]).unwrap();
        let rho_b = partial_trace(&reordered, &[perm[0] + 10]).unwrap();
        prop_assert!(max_diff(&rho_a, &rho_b) < 1e-12);
    }

    #[test]
    fn mixed_and_pure_expectations_agree(s in pure(3), n in axis()) {
        let op = kron(&build_rotation(n, 0.7, 0).unwrap(), &build_pauli(Axis::Y, 2)).unwrap();
        let a = expectation(&s, &op).unwrap();
        let b = expectation(&s.to_mixed().unwrap(), &op).unwrap();
        prop_assert!((a - b).norm() < 1e-12);
    }
}

#[test]
fn singlet_marginals_and_correlations() {
    let s = posner_core::machine::singlet::<f64>(0, 1);
    let r = partial_trace(&s, &[1]).unwrap();
    assert!((r.data()[0].re - 0.5).abs() < 1e-15 && r.data()[1].norm() < 1e-15);
    let zz = kron(&build_pauli(Axis::Z, 0), &build_pauli(Axis::Z, 1)).unwrap();
    assert!((expectation(&s, &zz).unwrap().re + 1.0).abs() < 1e-15);
    let u = build_rotation([0.6, 0.0, 0.8], 1.3, 0).unwrap();
    let both = kron(&u, &u.relabeled(vec![1]).unwrap()).unwrap();
    assert!((apply(&both, &s).unwrap().overlap_modulus(&s).unwrap() - 1.0).abs() < 1e-12);
}
