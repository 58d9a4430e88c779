//! Named experiments. Each takes typed parameters (unknown fields are
//! rejected, missing fields take the defaults shown by the echoed `params`)
//! and returns one [`ExperimentResult`].

use std::f64::consts::{FRAC_PI_4, PI};
use std::path::Path;

use num_complex::Complex;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use posner_core::aklt::{
    build_aklt_prime_circuit, build_peps_tensors, conserves_weight, contract_peps, edge_correlation,
    footnote_statistics, povm_completeness_error, refresh_statistics, site_spin_probability, Lattice,
};
use posner_core::codes::{
    build_qutrit_code, build_repetition_code, check_correction, check_detection, CriteriaReport, ErrorSet,
};
use posner_core::linalg::Matrix;
use posner_core::machine::coarse_bell_check_all;
use posner_core::protocols::{
    binding_probability, binding_probability_exact, check_cascade_identity, check_teleport_branches,
    incoherent_teleport,
    phi_theta_weights, prepare_phi_theta, random_rotation_average, teleport_branches, SingletPattern, TauQutritBasis,
    POSNER,
};
use posner_core::scalar::omega_pow;
use posner_core::spin::{
    build_c_operator, build_charge_basis, build_s2_product, build_s2_trio, build_sz_total, build_tau_projector,
    build_pauli, build_trio_basis, sector_weights, Axis,
};
use posner_core::{Selection, C64};

use crate::config::ExperimentConfig;
use crate::estimates::{diffusion_constant, diffusion_time, order_of_magnitude, rotation_time, EstimateInputs};
use crate::report::{Comparison, ExperimentResult, Row};
use crate::{CliError, CliResult};

/// Tolerance for identities that hold exactly in exact arithmetic.
const EXACT_TOL: f64 = 1e-10;
/// Tolerance for operator identities evaluated on large states.
const OP_TOL: f64 = 1e-9;

/// Experiment names accepted by [`run_experiment`].
pub const EXPERIMENTS: [&str; 14] = [
    "aklt_site",
    "bell_check",
    "binding_table",
    "cascade_identity",
    "charge_commutators",
    "codes",
    "eigenbasis",
    "estimates",
    "peps",
    "random_rotation",
    "refresh",
    "sector_ranks",
    "teleport",
    "weight_curve",
];

/// Runs one experiment. Relative lattice paths resolve against `base_dir`.
pub fn run_experiment(config: &ExperimentConfig, base_dir: &Path) -> CliResult<ExperimentResult> {
    match config.experiment.as_str() {
        "aklt_site" => aklt_site(config, base_dir),
        "bell_check" => bell_check(config),
        "binding_table" => binding_table(config),
        "cascade_identity" => cascade_identity(config),
        "charge_commutators" => charge_commutators(config),
        "codes" => codes(config),
        "eigenbasis" => eigenbasis(config),
        "estimates" => estimates(config),
        "peps" => peps(config, base_dir),
        "random_rotation" => random_rotation(config),
        "refresh" => refresh(config, base_dir),
        "sector_ranks" => sector_ranks(config),
        "teleport" => teleport(config),
        "weight_curve" => weight_curve(config),
        other => Err(CliError::Usage(format!("unknown experiment `{other}`; known: {}", EXPERIMENTS.join(", ")))),
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NoParams {}

fn parse_params<P: DeserializeOwned + Serialize>(config: &ExperimentConfig) -> CliResult<(P, Value)> {
    let p: P = serde_json::from_value(config.params.clone())
        .map_err(|e| CliError::Usage(format!("{} params: {e}", config.experiment)))?;
    let echoed = serde_json::to_value(&p).map_err(|e| CliError::Invariant(e.to_string()))?;
    Ok((p, echoed))
}

fn start<P: DeserializeOwned + Serialize>(config: &ExperimentConfig, seed: Option<u64>) -> CliResult<(P, ExperimentResult)> {
    let (p, echoed) = parse_params::<P>(config)?;
    Ok((p, ExperimentResult::new(&config.experiment, echoed, seed)))
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn sector(tau: u8) -> CliResult<Matrix<f64>> {
    Ok(build_tau_projector::<f64>(tau, &POSNER)?.matrix().clone())
}

fn sector_ranks(config: &ExperimentConfig) -> CliResult<ExperimentResult> {
    let (_, mut r) = start::<NoParams>(config, None)?;
    for (tau, target) in [(0u8, 24), (1, 20), (2, 20)] {
        r.push(&format!("rank_tau_{tau}"), Row::paper_exact(sector(tau)?.rank(1e-8), target));
    }
    Ok(r)
}

fn charge_commutators(config: &ExperimentConfig) -> CliResult<ExperimentResult> {
    let (_, mut r) = start::<NoParams>(config, None)?;
    let c = build_c_operator::<f64>(&POSNER)?;
    let sz = build_sz_total::<f64>(&POSNER)?;
    let s2 = build_s2_product::<f64>(&POSNER)?;
    r.push("c_with_sz_total", Row::paper(c.matrix().commutator(sz.matrix())?.max_abs(), 0.0, EXACT_TOL));
    r.push("c_with_trio_spin_product", Row::paper(c.matrix().commutator(s2.matrix())?.max_abs(), 0.0, EXACT_TOL));
    Ok(r)
}

fn eigen_residual(m: &Matrix<f64>, v: &[C64], lambda: C64) -> CliResult<f64> {
    let mv = m.apply(v)?;
    Ok(mv.iter().zip(v).map(|(a, b)| (a - lambda * b).norm()).fold(0.0, f64::max))
}

fn eigenbasis(config: &ExperimentConfig) -> CliResult<ExperimentResult> {
    let (_, mut r) = start::<NoParams>(config, None)?;
    let basis = build_charge_basis::<f64>();
    let c = build_c_operator::<f64>(&POSNER)?;
    let sz = build_sz_total::<f64>(&POSNER)?;
    let trio = build_s2_trio::<f64>(&[0, 1, 2])?.matrix().clone();
    let s2_first = trio.kron(&Matrix::identity(8));
    let s2_second = Matrix::<f64>::identity(8).kron(&trio);
    let spin = |two_s: u8| {
        let s = two_s as f64 / 2.0;
        C64::new(s * (s + 1.0), 0.0)
    };
    let (mut gram, mut residual) = (0.0f64, 0.0f64);
    for (i, e) in basis.iter().enumerate() {
        for (j, f) in basis.iter().enumerate() {
            let g: C64 = e.vector.iter().zip(&f.vector).map(|(a, b)| a.conj() * b).sum();
            gram = gram.max((g - if i == j { 1.0 } else { 0.0 }).norm());
        }
        let (s1, s2) = e.two_s();
        residual = residual
            .max(eigen_residual(c.matrix(), &e.vector, omega_pow(e.tau as i64))?)
            .max(eigen_residual(sz.matrix(), &e.vector, C64::new(e.m_total(), 0.0))?)
            .max(eigen_residual(&s2_first, &e.vector, spin(s1))?)
            .max(eigen_residual(&s2_second, &e.vector, spin(s2))?);
    }
    let trio_sz = build_sz_total::<f64>(&[0, 1, 2])?.matrix().clone();
    let mut trio_residual = 0.0f64;
    for e in build_trio_basis::<f64>() {
        let s = e.s();
        trio_residual = trio_residual
            .max(eigen_residual(&trio, &e.vector, C64::new(s * (s + 1.0), 0.0))?)
            .max(eigen_residual(&trio_sz, &e.vector, C64::new(e.m(), 0.0))?);
    }
    r.push("n_vectors", Row::paper_exact(basis.len(), 64));
    r.push("gram_deviation", Row::paper(gram, 0.0, EXACT_TOL));
    r.push("quantum_number_residual", Row::paper(residual, 0.0, EXACT_TOL));
    r.push("trio_quantum_number_residual", Row::paper(trio_residual, 0.0, EXACT_TOL));
    Ok(r)
}

fn constants(report: &CriteriaReport, axis: &str) -> Vec<f64> {
    report.entries.iter().filter(|e| e.errors[0].starts_with(axis)).map(|e| e.constant[0]).collect()
}

fn codes(config: &ExperimentConfig) -> CliResult<ExperimentResult> {
    let (_, mut r) = start::<NoParams>(config, None)?;
    let qutrit = build_qutrit_code::<f64>(&POSNER)?;
    let detection = check_detection(&qutrit, &ErrorSet::single_paulis(&POSNER))?;
    r.push("qutrit_detects_single_paulis", Row::paper_exact(detection.pass, true));
    r.push("qutrit_max_offdiagonal_deviation", Row::value(detection.worst.as_ref().map_or(0.0, |w| w.deviation)));
    for (axis, target) in [("X", 0.0), ("Y", 0.0), ("Z", 1.0 / 12.0)] {
        let c = constants(&detection, axis);
        let n = c.len();
        r.push(&format!("qutrit_c_sigma_{}", axis.to_lowercase()), Row::paper(c, vec![target; n], EXACT_TOL));
    }
    let repetition = build_repetition_code::<f64>(&POSNER)?;
    let flips = ErrorSet::pauli_products(Axis::X, &POSNER, 2)?;
    r.push("repetition_corrects_two_flips", Row::paper_exact(check_correction(&repetition, &flips)?.pass, true));
    let z = ErrorSet::new(vec![("Z0".into(), build_pauli(Axis::Z, 0))]);
    let phase = check_detection(&repetition, &z)?;
    r.push("repetition_detects_z0", Row::derived(phase.pass, false, 0.0).with_comparison(Comparison::Exact));
    Ok(r)
}

fn binding_row(pattern: &SingletPattern, target: Option<f64>) -> CliResult<Row> {
    let exact = binding_probability_exact(pattern)?;
    let value = binding_probability::<f64>(pattern)?;
    let row = match target {
        Some(t) => Row::paper(value, t, EXACT_TOL),
        None => Row::value(value),
    };
    Ok(row.with_exact(exact.to_string()))
}

fn binding_table(config: &ExperimentConfig) -> CliResult<ExperimentResult> {
    let (_, mut r) = start::<NoParams>(config, None)?;
    r.push("no_singlets", binding_row(&SingletPattern::default(), Some(43.0 / 128.0))?);
    r.push("two_cross_singlets", binding_row(&SingletPattern::cross(&[3, 4])?, Some(0.34375))?);
    r.push("three_cross_singlets", binding_row(&SingletPattern::cross(&[3, 4, 5])?, Some(0.375))?);
    r.push("six_cross_singlets", binding_row(&SingletPattern::cross(&[0, 1, 2, 3, 4, 5])?, Some(1.0))?);
    r.push("one_cross_singlet", binding_row(&SingletPattern::cross(&[2])?, None)?);
    Ok(r)
}

/// A singlet pattern given by preset name or explicitly.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum PatternSpec {
    Preset(String),
    Explicit(SingletPattern),
}

impl PatternSpec {
    fn resolve(&self) -> CliResult<SingletPattern> {
        let p = match self {
            PatternSpec::Preset(name) => match name.as_str() {
                "none" => SingletPattern::default(),
                "one_cross" => SingletPattern::cross(&[2])?,
                "two_cross" => SingletPattern::cross(&[3, 4])?,
                "three_cross" => SingletPattern::cross(&[3, 4, 5])?,
                "six_cross" => SingletPattern::cross(&[0, 1, 2, 3, 4, 5])?,
                other => return Err(CliError::Usage(format!("unknown singlet pattern `{other}`"))),
            },
            PatternSpec::Explicit(p) => p.clone(),
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RotationParams {
    pattern: PatternSpec,
    samples: usize,
}

impl Default for RotationParams {
    fn default() -> Self {
        RotationParams { pattern: PatternSpec::Preset("two_cross".into()), samples: 10_000 }
    }
}

fn random_rotation(config: &ExperimentConfig) -> CliResult<ExperimentResult> {
    let seed = config.require_seed()?;
    let (p, mut r) = start::<RotationParams>(config, Some(seed))?;
    let pattern = p.pattern.resolve()?;
    let avg = random_rotation_average(&pattern, p.samples, seed)?;
    r.push("mean", Row::paper(avg.mean, 43.0 / 128.0, 3.0 * avg.stderr));
    r.push("stderr", Row::value(avg.stderr));
    r.push("unrotated", Row::value(binding_probability::<f64>(&pattern)?));
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum TeleportMode {
    /// Both branches of one input, each postselected.
    Branches,
    /// One seeded run of one input.
    Sample,
    /// Both branches of `inputs` seeded random inputs.
    RandomInputs,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct TeleportParams {
    /// `[[re, im]; 3]`, normalized.
    coefficients: [[f64; 2]; 3],
    /// Angle of the `|φ(θ)⟩` basis.
    theta: f64,
    mode: TeleportMode,
    inputs: usize,
}

impl Default for TeleportParams {
    fn default() -> Self {
        TeleportParams {
            coefficients: [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
            theta: FRAC_PI_4,
            mode: TeleportMode::Branches,
            inputs: 100,
        }
    }
}

fn teleport(config: &ExperimentConfig) -> CliResult<ExperimentResult> {
    let (p, _) = parse_params::<TeleportParams>(config)?;
    let seed = match p.mode {
        TeleportMode::Branches => None,
        _ => Some(config.require_seed()?),
    };
    let (_, mut r) = start::<TeleportParams>(config, seed)?;
    if p.mode == TeleportMode::RandomInputs {
        let check = check_teleport_branches::<f64>(p.inputs, seed.unwrap_or_default())?;
        r.push("n_inputs", Row::value(check.n_inputs));
        r.push("max_success_deviation", Row::paper(check.max_success_deviation, 0.0, OP_TOL));
        r.push("max_failure_deviation", Row::paper(check.max_failure_deviation, 0.0, OP_TOL));
        r.push("max_p_pi_deviation", Row::derived(check.max_p_pi_deviation, 0.0, OP_TOL));
        return Ok(r);
    }
    let c = p.coefficients.map(|[re, im]| Complex::new(re, im));
    let basis = TauQutritBasis::<f64>::from_theta(p.theta)?;
    let branches = match p.mode {
        TeleportMode::Sample => {
            let s = incoherent_teleport(&basis, &c, Selection::Seed(seed.unwrap_or_default()))?;
            vec![("sample", s)]
        }
        _ => {
            let [ok, fail] = teleport_branches(&basis, &c)?;
            vec![("success", ok), ("failure", fail)]
        }
    };
    for (name, b) in &branches {
        r.push(&format!("{name}_c_distribution"), Row::paper(b.c_distribution.to_vec(), b.predicted.to_vec(), OP_TOL));
        r.push(&format!("{name}_probability"), Row::value(b.branch_probability));
        r.push(&format!("{name}_bound"), Row::value(b.bound));
    }
    r.push("p_pi", Row::derived(branches[0].1.p_pi, 1.0 / 3.0, OP_TOL));
    Ok(r)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct CascadeParams {
    states: usize,
}

impl Default for CascadeParams {
    fn default() -> Self {
        CascadeParams { states: 200 }
    }
}

fn cascade_identity(config: &ExperimentConfig) -> CliResult<ExperimentResult> {
    let seed = config.require_seed()?;
    let (p, mut r) = start::<CascadeParams>(config, Some(seed))?;
    let check = check_cascade_identity::<f64>(p.states, seed)?;
    r.push("n_states", Row::value(check.n_states));
    r.push("max_deviation", Row::paper(check.max_deviation, 0.0, OP_TOL));
    r.push("max_cross_term", Row::derived(check.max_cross_term, 0.0, OP_TOL));
    Ok(r)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct CurveParams {
    theta_min: f64,
    theta_max: f64,
    samples: usize,
}

impl Default for CurveParams {
    fn default() -> Self {
        CurveParams { theta_min: 0.0, theta_max: PI, samples: 50 }
    }
}

fn weight_curve(config: &ExperimentConfig) -> CliResult<ExperimentResult> {
    let (p, mut r) = start::<CurveParams>(config, None)?;
    if p.samples < 2 || !(p.theta_max > p.theta_min) {
        return Err(CliError::Usage("weight_curve needs samples >= 2 and theta_max > theta_min".into()));
    }
    let mut rows = Vec::with_capacity(p.samples);
    let mut worst = 0.0f64;
    for i in 0..p.samples {
        let theta = p.theta_min + (p.theta_max - p.theta_min) * i as f64 / (p.samples - 1) as f64;
        let w = sector_weights(&prepare_phi_theta::<f64>(theta)?, &POSNER)?;
        let f = phi_theta_weights(theta);
        worst = worst.max(max_dev(&w, &f));
        rows.push([&[theta][..], &w[..], &f[..]].concat());
    }
    let quarter = sector_weights(&prepare_phi_theta::<f64>(FRAC_PI_4)?, &POSNER)?;
    r.push("max_deviation", Row::paper(worst, 0.0, OP_TOL));
    r.push("weights_at_quarter_pi", Row::paper(quarter.to_vec(), vec![1.0 / 3.0; 3], OP_TOL));
    let columns = ["theta", "w0", "w1", "w2", "w0_formula", "w1_formula", "w2_formula"];
    r.table = Some(crate::report::Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows });
    Ok(r)
}

/// A lattice given by preset name, file path or inline.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum LatticeSpec {
    Named(String),
    Inline(Lattice),
}

impl LatticeSpec {
    fn resolve(&self, base_dir: &Path) -> CliResult<Lattice> {
        match self {
            LatticeSpec::Inline(l) => Ok(l.clone()),
            LatticeSpec::Named(name) => match name.as_str() {
                "single_posner" => Ok(Lattice::single_posner()),
                "posner_pair" => Ok(Lattice::posner_pair()),
                "posner_ring" => Ok(Lattice::posner_ring()),
                path => {
                    let full = base_dir.join(path);
                    let text = std::fs::read_to_string(&full)
                        .map_err(|e| CliError::Usage(format!("cannot read lattice {}: {e}", full.display())))?;
                    Ok(Lattice::from_json_str(&text)?)
                }
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct LatticeParams {
    lattice: LatticeSpec,
}

impl Default for LatticeParams {
    fn default() -> Self {
        LatticeParams { lattice: LatticeSpec::Named("posner_pair".into()) }
    }
}

fn peps(config: &ExperimentConfig, base_dir: &Path) -> CliResult<ExperimentResult> {
    let (p, mut r) = start::<LatticeParams>(config, None)?;
    let (plus, minus) = build_peps_tensors::<f64>()?;
    let printed = [
        ("t_plus_a000_v000", plus.get([0, 0, 0], 0, 0, 0), 1.0),
        ("t_plus_a000_v001", plus.get([0, 0, 0], 0, 0, 1), 0.0),
        ("t_plus_a100_v100", plus.get([1, 0, 0], 1, 0, 0), -1.0 / 3f64.sqrt()),
    ];
    for (name, z, target) in printed {
        r.push(name, Row::paper(z.re, target, 1e-15));
        r.push(&format!("{name}_imag"), Row::paper(z.im, 0.0, 1e-15));
    }
    r.push("t_plus_conserves_weight", Row::derived(conserves_weight(&plus, 1e-12), true, 0.0).with_comparison(Comparison::Exact));
    r.push("t_minus_conserves_weight", Row::derived(conserves_weight(&minus, 1e-12), true, 0.0).with_comparison(Comparison::Exact));
    let lattice = p.lattice.resolve(base_dir)?;
    let circuit = build_aklt_prime_circuit::<f64>(&lattice, true, 0)?;
    let contracted = contract_peps::<f64>(&lattice)?;
    r.push("n_qubits", Row::value(circuit.layout.n_qubits()));
    r.push("peps_circuit_overlap", Row::paper(circuit.state.overlap_modulus(&contracted)?, 1.0, 1e-8));
    Ok(r)
}

fn aklt_site(config: &ExperimentConfig, base_dir: &Path) -> CliResult<ExperimentResult> {
    let (p, mut r) = start::<LatticeParams>(config, None)?;
    let footnote = footnote_statistics::<f64>()?;
    r.push("footnote_tau_zero_weight", Row::derived(footnote.tau_zero_weight, 0.375, EXACT_TOL));
    r.push("footnote_three_halves_pair", Row::paper(footnote.three_halves_pair, 2.0 / 3.0, EXACT_TOL));
    r.push("edge_correlation_zz", Row::derived(edge_correlation::<f64>()?, -25.0 / 81.0, EXACT_TOL));
    r.push("povm_completeness_error", Row::derived(povm_completeness_error::<f64>()?, 0.0, EXACT_TOL));
    let lattice = p.lattice.resolve(base_dir)?;
    let circuit = build_aklt_prime_circuit::<f64>(&lattice, true, 0)?;
    let n = circuit.layout.posners.len();
    let mut site = Vec::with_capacity(n);
    let mut tau_zero = Vec::with_capacity(n);
    for k in 0..n {
        site.push(site_spin_probability(&circuit.state, &circuit.register(k))?);
        tau_zero.push(sector_weights(&circuit.state, &circuit.register(k))?[0]);
    }
    r.push("site_three_halves_pair", Row::value(site));
    r.push("tau_zero_weight", Row::derived(tau_zero, vec![1.0; n], OP_TOL));
    r.push("round_success_probability", Row::value(circuit.round_success_probability));
    Ok(r)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RefreshParams {
    lattice: LatticeSpec,
    runs: usize,
}

impl Default for RefreshParams {
    fn default() -> Self {
        RefreshParams { lattice: LatticeSpec::Named("single_posner".into()), runs: 200 }
    }
}

fn refresh(config: &ExperimentConfig, base_dir: &Path) -> CliResult<ExperimentResult> {
    let seed = config.require_seed()?;
    let (p, mut r) = start::<RefreshParams>(config, Some(seed))?;
    if p.runs == 0 {
        return Err(CliError::Usage("refresh needs runs >= 1".into()));
    }
    let stats = refresh_statistics(&p.lattice.resolve(base_dir)?, p.runs, seed)?;
    // Geometric attempts: standard deviation √(1 − q)/q with q = 1/expected.
    let q = 1.0 / stats.expected_attempts;
    let tol = 4.0 * (1.0 - q).sqrt() / q / (p.runs as f64).sqrt();
    r.push("mean_attempts", Row::derived(stats.mean_attempts, stats.expected_attempts, tol));
    r.samples = Some(json!(stats.attempts));
    Ok(r)
}

fn bell_check(config: &ExperimentConfig) -> CliResult<ExperimentResult> {
    let (_, mut r) = start::<NoParams>(config, None)?;
    for (i, check) in coarse_bell_check_all::<f64>().iter().enumerate() {
        let row = Row::derived(check.max_deviation, 0.0, OP_TOL).with_exact(format!("{} / {}", check.one, check.two));
        r.push(&format!("choice_{}_max_deviation", i + 1), row);
    }
    Ok(r)
}

fn estimates(config: &ExperimentConfig) -> CliResult<ExperimentResult> {
    let (p, mut r) = start::<EstimateInputs>(config, None)?;
    p.validate()?;
    let rows = [
        ("diffusion_constant", diffusion_constant(&p), 1e-10, "m^2/s"),
        ("t_diff", diffusion_time(&p), 1e-4, "s"),
        ("t_rot", rotation_time(&p), 1.0, "s"),
    ];
    for (name, value, target, unit) in rows {
        let mut row = Row::paper(value, target, 1.0).with_comparison(Comparison::Log10).with_unit(unit);
        row.order_of_magnitude = Some(order_of_magnitude(value));
        r.push(name, row);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: &str, params: Value, seed: Option<u64>) -> CliResult<ExperimentResult> {
        run_experiment(&ExperimentConfig::new(name, params, seed), Path::new("."))
    }

    #[test]
    fn binding_table_rows() {
        let r = run("binding_table", json!({}), None).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.values["no_singlets"].exact.as_deref(), Some("43/128"));
        assert_eq!(r.values["two_cross_singlets"].exact.as_deref(), Some("11/32"));
    }

    #[test]
    fn unknown_experiment_and_missing_seed_are_usage_errors() {
        assert!(matches!(run("teleportation", json!({}), None), Err(CliError::Usage(_))));
        assert!(matches!(run("random_rotation", json!({}), None), Err(CliError::Usage(_))));
        assert!(matches!(run("weight_curve", json!({"sampels": 3}), None), Err(CliError::Usage(_))));
    }

    #[test]
    fn teleport_basis_input_branches() {
        let r = run("teleport", json!({}), None).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        assert_eq!(r.values["failure_c_distribution"].paper_target, Some(json!([0.0, 0.5, 0.5])));
    }

    #[test]
    fn estimates_rows() {
        let r = run("estimates", json!({}), None).unwrap();
        assert!(r.passed());
        assert_eq!(r.values["t_rot"].order_of_magnitude, Some(1.0));
        assert!(matches!(run("estimates", json!({"eta": -1.0}), None), Err(CliError::Usage(_))));
    }
}
