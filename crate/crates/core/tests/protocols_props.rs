use num_complex::Complex;
use posner_core::linalg::Matrix;
use posner_core::protocols::{
    binding_probability, failure_distribution, haar_unitary, incoherent_teleport, recover_input_weights,
    rotated_binding_probability, success_distribution, SingletPattern, TauQutritBasis,
};
use posner_core::rng::stream;
use posner_core::Selection;
use proptest::prelude::*;

fn coefficients() -> impl Strategy<Value = [Complex<f64>; 3]> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 3)
        .prop_filter("nonzero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-2)
        .prop_map(|v| {
            let n = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            [0, 1, 2].map(|j| Complex::new(v[j].0 / n, v[j].1 / n))
        })
}

/// Disjoint pairs drawn from a shuffled list of the twelve labels.
fn pattern() -> impl Strategy<Value = SingletPattern> {
    (Just((0..12).collect::<Vec<usize>>()).prop_shuffle(), 0usize..=6)
        .prop_map(|(labels, k)| SingletPattern::new((0..k).map(|i| (labels[2 * i], labels[2 * i + 1])).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn teleport_branches_follow_input_weights(c in coefficients()) {
        let basis = TauQutritBasis::<f64>::balanced().unwrap();
        let ok = incoherent_teleport(&basis, &c, Selection::Force(0)).unwrap();
        let fail = incoherent_teleport(&basis, &c, Selection::Force(1)).unwrap();
        prop_assert!((ok.branch_probability + fail.branch_probability - 1.0).abs() < 1e-10);
        let (s, f) = (success_distribution(&c), failure_distribution(&c));
        for j in 0..3 {
            prop_assert!((ok.c_distribution[j] - s[j]).abs() < 1e-9);
            prop_assert!((fail.c_distribution[j] - f[j]).abs() < 1e-9);
            prop_assert!((recover_input_weights(false, &fail.c_distribution)[j] - c[j].norm_sqr()).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn identical_rotations_on_singlets_leave_binding_unchanged(p in pattern(), seed in any::<u64>()) {
        let base = binding_probability::<f64>(&p).unwrap();
        let mut rng = stream(seed, 0);
        let mut us: Vec<Matrix<f64>> = (0..12).map(|_| Matrix::identity(2)).collect();
        for &(a, b) in &p.pairs {
            let u = haar_unitary::<f64, _>(&mut rng);
            us[a] = u.clone();
            us[b] = u;
        }
        for l in (0..12).filter(|l| !p.pairs.iter().any(|(a, b)| a == l || b == l)) {
            us[l] = haar_unitary(&mut rng);
        }
        prop_assert!((rotated_binding_probability(&p, &us).unwrap() - base).abs() < 1e-9);
    }
}
