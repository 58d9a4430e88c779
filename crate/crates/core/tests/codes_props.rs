use num_complex::Complex;
use posner_core::codes::{build_qutrit_code, build_repetition_code, check_correction, check_detection, Code, ErrorSet};
use posner_core::linalg::Matrix;
use posner_core::spin::{permutation_matrix, rotation_matrix, C_CYCLE};
use posner_core::DenseOperator;
use proptest::prelude::*;

const L: [usize; 6] = [0, 1, 2, 3, 4, 5];

fn codes() -> [Code<f64>; 2] {
    [build_qutrit_code(&L).unwrap(), build_repetition_code(&L).unwrap()]
}

fn matrix2() -> impl Strategy<Value = Matrix<f64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 4)
        .prop_map(|v| Matrix::from_vec(2, v.into_iter().map(|(a, b)| Complex::new(a, b)).collect()).unwrap())
}

fn axis() -> impl Strategy<Value = [f64; 3]> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU)
        .prop_map(|(t, p)| [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()])
}

/// Local rotations, the charge permutation and a diagonal phase pattern.
fn global_unitary(axes: &[[f64; 3]], angles: &[f64], phases: &[f64]) -> DenseOperator<f64> {
    let mut local = Matrix::identity(1);
    for (n, t) in axes.iter().zip(angles) {
        local = local.kron(&rotation_matrix(*n, *t).unwrap());
    }
    let phase = Matrix::from_fn(64, |r, c| if r == c { Complex::from_polar(1.0, phases[r]) } else { Complex::new(0.0, 0.0) });
    let u = phase.matmul(&permutation_matrix(&C_CYCLE)).unwrap().matmul(&local).unwrap();
    DenseOperator::new(u, L.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn detection_matches_correction_with_identity(e in matrix2(), q in 0usize..6) {
        for code in codes() {
            let err = DenseOperator::new(e.clone(), vec![q]).unwrap();
            let single = ErrorSet::new(vec![("E".into(), err.clone())]);
            let with_id = ErrorSet::new(vec![("I".into(), DenseOperator::identity(vec![q]).unwrap()), ("E".into(), err)]);
            let d = check_detection(&code, &single).unwrap().pass;
            let c = check_correction(&code, &with_id).unwrap().pass;
            prop_assert_eq!(d, c, "code {}", code.name);
        }
    }

    #[test]
    fn criteria_survive_a_global_unitary(
        axes in prop::collection::vec(axis(), 6),
        angles in prop::collection::vec(-3.0..3.0f64, 6),
        phases in prop::collection::vec(-3.0..3.0f64, 64),
    ) {
        let u = global_unitary(&axes, &angles, &phases);
        let errors = ErrorSet::single_paulis(&L);
        for code in codes() {
            let before = check_detection(&code, &errors).unwrap();
            let after = check_detection(&code.transformed(&u).unwrap(), &errors.conjugated(&u).unwrap()).unwrap();
            prop_assert_eq!(before.pass, after.pass);
            for (x, y) in before.entries.iter().zip(&after.entries) {
                for (rx, ry) in x.re.iter().zip(&y.re) {
                    for (a, b) in rx.iter().zip(ry) {
                        prop_assert!((a - b).abs() < 1e-9);
                    }
                }
                for (ix, iy) in x.im.iter().zip(&y.im) {
                    for (a, b) in ix.iter().zip(iy) {
                        prop_assert!((a - b).abs() < 1e-9);
                    }
                }
            }
        }
    }
}

#[test]
fn no_single_pauli_annihilates_a_qutrit_codeword() {
    let code = build_qutrit_code::<f64>(&L).unwrap();
    for (name, e) in ErrorSet::single_paulis(&L).errors {
        for w in code.codewords() {
            let moved = posner_core::apply(&e, w).unwrap();
            let norm: f64 = moved.data().iter().map(|z| z.norm_sqr()).sum();
            assert!(norm > 0.5, "{name}");
        }
    }
}

#[test]
fn qutrit_sigma_z_constants() {
    let code = build_qutrit_code::<f64>(&L).unwrap();
    let r = check_detection(&code, &ErrorSet::single_paulis(&L)).unwrap();
    for q in L {
        let c = r.entry(&[&format!("Z{q}")]).unwrap().constant;
        assert!(c[0].abs() < 1e-12 && c[1].abs() < 1e-12);
    }
}
