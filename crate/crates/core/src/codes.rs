//! Small codes on one Posner and the Knill–Laflamme style criteria.
//!
//! Detection of an error set `{E_α}` requires `⟨j_L|E_α|k_L⟩ = C_α δ_jk`;
//! correction requires `⟨j_L|E_β† E_α|k_L⟩ = C_αβ δ_jk`. Both checks report
//! every matrix element so that a failure can be inspected.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qstate::{kernel, kron, DenseOperator, QState};
use crate::scalar::{c_zero, Scalar};
use crate::spin::{build_pauli, trio_vector, Axis, TrioName};
use crate::Label;

/// Orthonormal codewords over a common ordered set of physical qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Code<T> {
    pub name: String,
    codewords: Vec<QState<T>>,
}

impl<T: Scalar> Code<T> {
    pub fn new(name: &str, codewords: Vec<QState<T>>) -> Result<Self> {
        let first = codewords.first().ok_or_else(|| Error::InvalidArgument("a code needs a codeword".into()))?;
        let labels = first.labels().to_vec();
        for w in &codewords {
            if !w.is_pure() || w.labels() != labels.as_slice() {
                return Err(Error::InvalidArgument("codewords must be pure states on the same labels".into()));
            }
        }
        for (j, a) in codewords.iter().enumerate() {
            for (k, b) in codewords.iter().enumerate() {
                let target = if j == k { 1.0 } else { 0.0 };
                let dev = (a.overlap(b)? - Complex::new(T::lit(target), T::zero())).norm();
                if dev > T::state_tol() {
                    return Err(Error::Invariant(format!("codewords {j} and {k} deviate from orthonormality by {dev}")));
                }
            }
        }
        Ok(Self { name: name.to_string(), codewords })
    }

    pub fn codewords(&self) -> &[QState<T>] {
        &self.codewords
    }

    pub fn logical_dim(&self) -> usize {
        self.codewords.len()
    }

    pub fn labels(&self) -> &[Label] {
        self.codewords[0].labels()
    }

    /// The code `{U|j_L⟩}` for a unitary `U` on (a subset of) the code qubits.
    pub fn transformed(&self, u: &DenseOperator<T>) -> Result<Self> {
        let words = self.codewords.iter().map(|w| crate::qstate::apply(u, w)).collect::<Result<Vec<_>>>()?;
        Self::new(&self.name, words)
    }

    /// `E|j_L⟩` for every codeword, unnormalized.
    fn images(&self, e: &DenseOperator<T>) -> Result<Vec<Vec<Complex<T>>>> {
        let labels = self.labels();
        let positions = e
            .targets()
            .iter()
            .map(|t| labels.iter().position(|l| l == t).ok_or(Error::UnknownLabel(*t)))
            .collect::<Result<Vec<_>>>()?;
        Ok(self
            .codewords
            .iter()
            .map(|w| kernel::apply_local(w.data(), labels.len(), &positions, e.matrix(), false))
            .collect())
    }
}

/// Named error operators.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorSet<T> {
    pub errors: Vec<(String, DenseOperator<T>)>,
}

impl<T: Scalar> ErrorSet<T> {
    pub fn new(errors: Vec<(String, DenseOperator<T>)>) -> Self {
        Self { errors }
    }

    /// `σ^x, σ^y, σ^z` on each label, named like `X3`.
    pub fn single_paulis(labels: &[Label]) -> Self {
        let errors = labels
            .iter()
            .flat_map(|&l| Axis::ALL.into_iter().map(move |a| (format!("{}{l}", a.symbol().to_uppercase()), build_pauli(a, l))))
            .collect();
        Self { errors }
    }

    /// Products of one Pauli type on every subset of at most `max_weight`
    /// labels, including the identity (named `I`).
    pub fn pauli_products(axis: Axis, labels: &[Label], max_weight: usize) -> Result<Self> {
        let mut errors = vec![("I".to_string(), DenseOperator::identity(vec![labels[0]])?)];
        let n = labels.len();
        for mask in 1usize..(1 << n) {
            if mask.count_ones() as usize > max_weight {
                continue;
            }
            let chosen: Vec<Label> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| labels[i]).collect();
            let mut op = build_pauli::<T>(axis, chosen[0]);
            for &l in &chosen[1..] {
                op = kron(&op, &build_pauli(axis, l))?;
            }
            let name: String = chosen.iter().map(|l| format!("{}{l}", axis.symbol().to_uppercase())).collect();
            errors.push((name, op));
        }
        Ok(Self { errors })
    }

    /// `U E U†` for each error, each embedded on `u`'s targets.
    pub fn conjugated(&self, u: &DenseOperator<T>) -> Result<Self> {
        let labels = u.targets().to_vec();
        let (um, ud) = (u.matrix(), u.matrix().adjoint());
        let errors = self
            .errors
            .iter()
            .map(|(name, e)| {
                let m = um.matmul(&e.embed(&labels)?)?.matmul(&ud)?;
                Ok((name.clone(), DenseOperator::new(m, labels.clone())?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { errors })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Criteria {
    Detection,
    Correction,
}

/// One logical matrix `⟨j_L|E|k_L⟩` with its fitted constant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriteriaEntry {
    /// `[α]` for detection, `[α, β]` for `E_β† E_α` in correction.
    pub errors: Vec<String>,
    pub im: Vec<Vec<f64>>,
    pub re: Vec<Vec<f64>>,
    /// Mean diagonal element, `[re, im]`.
    pub constant: [f64; 2],
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub errors: Vec<String>,
    pub j: usize,
    pub k: usize,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriteriaReport {
    pub code: String,
    pub criteria: Criteria,
    pub entries: Vec<CriteriaEntry>,
    pub pass: bool,
    pub tolerance: f64,
    /// The entry with the largest deviation from `C δ_jk`.
    pub worst: Option<Violation>,
}

impl CriteriaReport {
    pub fn entry(&self, errors: &[&str]) -> Option<&CriteriaEntry> {
        self.entries.iter().find(|e| e.errors.iter().map(String::as_str).eq(errors.iter().copied()))
    }
}

pub const CRITERIA_TOL: f64 = 1e-9;

fn fit<T: Scalar>(errors: Vec<String>, m: &[Vec<Complex<T>>]) -> (CriteriaEntry, Violation) {
    let d = m.len();
    let c = (0..d).fold(c_zero::<T>(), |acc, j| acc + m[j][j]).unscale(T::lit(d as f64));
    let mut worst = Violation { errors: errors.clone(), j: 0, k: 0, deviation: 0.0 };
    for (j, row) in m.iter().enumerate() {
        for (k, z) in row.iter().enumerate() {
            let dev = if j == k { (*z - c).norm() } else { z.norm() }.as_f64();
            if dev > worst.deviation {
                worst = Violation { errors: errors.clone(), j, k, deviation: dev };
            }
        }
    }
    let entry = CriteriaEntry {
        errors,
        im: m.iter().map(|r| r.iter().map(|z| z.im.as_f64()).collect()).collect(),
        re: m.iter().map(|r| r.iter().map(|z| z.re.as_f64()).collect()).collect(),
        constant: [c.re.as_f64(), c.im.as_f64()],
        deviation: worst.deviation,
    };
    (entry, worst)
}

fn report<T: Scalar>(code: &Code<T>, criteria: Criteria, fitted: Vec<(CriteriaEntry, Violation)>) -> CriteriaReport {
    let worst = fitted.iter().map(|(_, v)| v).max_by(|a, b| a.deviation.total_cmp(&b.deviation)).cloned();
    let pass = worst.as_ref().map_or(true, |w| w.deviation < CRITERIA_TOL);
    CriteriaReport {
        code: code.name.clone(),
        criteria,
        entries: fitted.into_iter().map(|(e, _)| e).collect(),
        pass,
        tolerance: CRITERIA_TOL,
        worst,
    }
}

/// Error-detection criteria for every error in the set.
pub fn check_detection<T: Scalar>(code: &Code<T>, errors: &ErrorSet<T>) -> Result<CriteriaReport> {
    let mut fitted = Vec::with_capacity(errors.errors.len());
    for (name, e) in &errors.errors {
        let images = code.images(e)?;
        let m: Vec<Vec<Complex<T>>> = code
            .codewords
            .iter()
            .map(|wj| images.iter().map(|ek| kernel::inner(wj.data(), ek)).collect())
            .collect();
        fitted.push(fit(vec![name.clone()], &m));
    }
    Ok(report(code, Criteria::Detection, fitted))
}

/// Error-correction criteria for every ordered pair `(α, β)`.
pub fn check_correction<T: Scalar>(code: &Code<T>, errors: &ErrorSet<T>) -> Result<CriteriaReport> {
    let images = errors.errors.iter().map(|(_, e)| code.images(e)).collect::<Result<Vec<_>>>()?;
    let mut fitted = Vec::with_capacity(images.len() * images.len());
    for (a, (name_a, _)) in errors.errors.iter().enumerate() {
        for (b, (name_b, _)) in errors.errors.iter().enumerate() {
            let m: Vec<Vec<Complex<T>>> = images[b]
                .iter()
                .map(|bj| images[a].iter().map(|ak| kernel::inner(bj, ak)).collect())
                .collect();
            fitted.push(fit(vec![name_a.clone(), name_b.clone()], &m));
        }
    }
    Ok(report(code, Criteria::Correction, fitted))
}

fn singlet_of_trios<T: Scalar>(a: TrioName, b: TrioName, labels: &[Label]) -> Result<QState<T>> {
    let (va, vb) = (trio_vector::<T>(a), trio_vector::<T>(b));
    let amps: Vec<Complex<T>> = (0..64).map(|x| va[x >> 3] * vb[x & 7] - vb[x >> 3] * va[x & 7]).collect();
    QState::pure_normalized(labels.to_vec(), amps)
}

/// The qutrit code on one Posner: `|j_L⟩` is the antisymmetric pairing of a
/// sector-`j` trio state with its spin-flipped partner.
pub fn build_qutrit_code<T: Scalar>(labels: &[Label]) -> Result<Code<T>> {
    if labels.len() != 6 {
        return Err(Error::Arity { expected: 6, got: labels.len() });
    }
    let words = vec![
        singlet_of_trios(TrioName::W, TrioName::WBar, labels)?,
        singlet_of_trios(TrioName::Omega2, TrioName::Omega2Bar, labels)?,
        singlet_of_trios(TrioName::Omega, TrioName::OmegaBar, labels)?,
    ];
    Code::new("qutrit", words)
}

/// The six-qubit repetition code `|000000⟩, |111111⟩`.
pub fn build_repetition_code<T: Scalar>(labels: &[Label]) -> Result<Code<T>> {
    if labels.len() != 6 {
        return Err(Error::Arity { expected: 6, got: labels.len() });
    }
    Code::new(
        "repetition",
        vec![QState::from_bits(labels.to_vec(), &[0; 6])?, QState::from_bits(labels.to_vec(), &[1; 6])?],
    )
}

/// Matrix of `⟨j_L|σ^axis_label|k_L⟩`, a convenience for reports.
pub fn logical_matrix<T: Scalar>(code: &Code<T>, e: &DenseOperator<T>) -> Result<Matrix<T>> {
    let images = code.images(e)?;
    let d = code.logical_dim();
    Ok(Matrix::from_fn(d, |j, k| kernel::inner(code.codewords[j].data(), &images[k])))
}
