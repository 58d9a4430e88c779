use num_complex::Complex;
use posner_core::machine::{run_script, Machine};
use posner_core::{QState, Selection};
use proptest::prelude::*;

const FISHER: &str = include_str!("../../cli/scripts/fisher_narrative.json");

fn random_posners(m: &mut Machine<f64>, amps: &[Vec<(f64, f64)>]) {
    for (k, a) in amps.iter().enumerate() {
        let v = a.iter().map(|&(x, y)| Complex::new(x, y)).collect();
        let labels = m.prepare_state(&QState::pure_normalized((0..6).collect(), v).unwrap()).unwrap();
        m.form_posner(["A", "B", "C"][k], &labels).unwrap();
    }
}

fn posner_amps() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 64)
}

fn max_diff(a: &QState<f64>, b: &QState<f64>) -> f64 {
    a.data().iter().zip(b.data()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn operations_keep_normalization(a in posner_amps(), b in posner_amps(), theta in -3.0..3.0f64, seed in any::<u64>()) {
        let mut m = Machine::<f64>::new();
        random_posners(&mut m, &[a, b]);
        m.permute_hextuple("A").unwrap();
        m.rotate_hextuple("B", [0.0, 0.6, 0.8], theta).unwrap();
        let out = m.attempt_binding("A", "B", Selection::Seed(seed)).unwrap();
        if out.bound {
            m.rotate_dodectuple("A", "B", [1.0, 0.0, 0.0], theta).unwrap();
            m.hydrolyze_pair("A", "B").unwrap();
        }
        let norm: f64 = m.state().data().iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-10);
        m.state().check_invariants().unwrap();
    }

    #[test]
    fn binding_ignores_rotations_of_other_registers(a in posner_amps(), b in posner_amps(), c in posner_amps(), theta in -3.0..3.0f64) {
        let mut m = Machine::<f64>::new();
        random_posners(&mut m, &[a, b, c]);
        let before = m.binding_probability("A", "B").unwrap();
        m.rotate_hextuple("C", [0.0, 0.0, 1.0], theta).unwrap();
        m.permute_hextuple("C").unwrap();
        prop_assert!((m.binding_probability("A", "B").unwrap() - before).abs() < 1e-9);
    }

    #[test]
    fn binding_commutes_with_charge_and_total_sz(a in posner_amps(), b in posner_amps(), phi in -3.0..3.0f64) {
        // Π_AB U ψ and U Π_AB ψ for U = C_A C_B and U = exp(−iφ S^z_total).
        let mut base = Machine::<f64>::new();
        random_posners(&mut base, &[a, b]);
        let transforms: [&dyn Fn(&mut Machine<f64>); 2] = [
            &|m| { m.permute_hextuple("A").unwrap(); m.permute_hextuple("B").unwrap(); },
            &|m| { m.rotate_hextuple("A", [0.0, 0.0, 1.0], phi).unwrap(); m.rotate_hextuple("B", [0.0, 0.0, 1.0], phi).unwrap(); },
        ];
        for u in transforms {
            let mut first = base.clone();
            u(&mut first);
            let p1 = first.attempt_binding("A", "B", Selection::Force(0)).unwrap().p_bind;
            let mut second = base.clone();
            let p2 = second.attempt_binding("A", "B", Selection::Force(0)).unwrap().p_bind;
            second.separate("A", "B").unwrap();
            u(&mut second);
            prop_assert!((p1 - p2).abs() < 1e-9);
            prop_assert!(max_diff(first.state(), second.state()) < 1e-9);
        }
    }

    #[test]
    fn script_replay_is_deterministic(seed in any::<u64>()) {
        let (m1, t1) = run_script::<f64>(FISHER, seed).unwrap();
        let (m2, t2) = run_script::<f64>(FISHER, seed).unwrap();
        prop_assert_eq!(t1, t2);
        prop_assert_eq!(m1.state(), m2.state());
    }
}

#[test]
fn fisher_narrative_completes() {
    let (m, trace) = run_script::<f64>(FISHER, 2024).unwrap();
    m.state().check_invariants().unwrap();
    let ops: Vec<&str> = trace.steps.iter().map(|s| s.op.as_str()).collect();
    assert!(ops.contains(&"attempt_binding") && ops.contains(&"hydrolyze_pair"));
    let hydrolysis = ops.iter().position(|o| *o == "hydrolyze_pair").unwrap();
    assert_eq!(ops[hydrolysis + 1], "form_posner");
}

#[test]
fn maximally_mixed_pair_binds_at_baseline() {
    let mut m = Machine::<f64>::new();
    m.prepare_state(&QState::maximally_mixed((0..12).collect()).unwrap()).unwrap();
    m.form_posner("A", &[0, 1, 2, 3, 4, 5]).unwrap();
    m.form_posner("B", &[6, 7, 8, 9, 10, 11]).unwrap();
    assert!((m.binding_probability("A", "B").unwrap() - 43.0 / 128.0).abs() < 1e-12);
}
