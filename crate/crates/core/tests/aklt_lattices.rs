use posner_core::aklt::{build_aklt_prime_circuit, contract_peps, refresh_statistics, site_spin_probability, Lattice};
use posner_core::spin::sector_weights;

#[test]
fn peps_matches_circuit_on_posner_pair() {
    let lattice = Lattice::posner_pair();
    let circuit = build_aklt_prime_circuit::<f64>(&lattice, true, 0).unwrap();
    let peps = contract_peps::<f64>(&lattice).unwrap();
    let overlap = circuit.state.overlap_modulus(&peps).unwrap();
    assert!((overlap - 1.0).abs() < 1e-8, "overlap {overlap}");
    for k in 0..2 {
        let w = sector_weights(&circuit.state, &circuit.register(k)).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-9);
    }
}

#[test]
fn peps_matches_circuit_on_single_posner() {
    let lattice = Lattice::single_posner();
    let circuit = build_aklt_prime_circuit::<f64>(&lattice, true, 0).unwrap();
    let peps = contract_peps::<f64>(&lattice).unwrap();
    assert!((circuit.state.overlap_modulus(&peps).unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn ring_uses_the_binding_cascade() {
    let lattice = Lattice::posner_ring();
    let circuit = build_aklt_prime_circuit::<f64>(&lattice, true, 0).unwrap();
    for k in 0..3 {
        let w = sector_weights(&circuit.state, &circuit.register(k)).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-9, "{w:?}");
    }
    let peps = contract_peps::<f64>(&lattice).unwrap();
    assert!((circuit.state.overlap_modulus(&peps).unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn exact_site_statistic_on_posner_pair() {
    let circuit = build_aklt_prime_circuit::<f64>(&Lattice::posner_pair(), true, 0).unwrap();
    let p = site_spin_probability(&circuit.state, &circuit.register(0)).unwrap();
    println!("P(3/2 pair) on the two-Posner lattice: {p}");
    assert!(p > 0.0 && p < 1.0);
}

#[test]
fn refresh_attempts_are_geometric() {
    let stats = refresh_statistics(&Lattice::single_posner(), 400, 17).unwrap();
    // p = 3/8 per round: mean 8/3, standard deviation √(1−p)/p ≈ 2.1.
    assert!((stats.expected_attempts - 8.0 / 3.0).abs() < 1e-9);
    let stderr = ((1.0 - 0.375) as f64).sqrt() / 0.375 / (400f64).sqrt();
    assert!((stats.mean_attempts - stats.expected_attempts).abs() < 4.0 * stderr, "{}", stats.mean_attempts);
}
