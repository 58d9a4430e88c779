//! Dense quantum states over labeled qubits.
//!
//! Labels are arbitrary integers; the position of a label in
//! [`QState::labels`] fixes its bit in the basis index, with the first label
//! as the most significant bit. Pure states hold `2^n` amplitudes and mixed
//! states a row-major `2^n × 2^n` density matrix.

pub(crate) mod kernel;
pub(crate) mod factored;
mod json;
pub(crate) mod measure;
mod operator;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{c_one, c_zero, Scalar};
use crate::Label;

pub use json::StateJson;
pub use measure::{measure_kraus, measure_pvm, pvm_probabilities, Measurement, Selection};
pub use operator::{kron, DenseOperator};

/// Hard cap on the number of qubits in any state.
pub const MAX_QUBITS: usize = 18;
/// Practical cap for density matrices (a 13-qubit `f64` matrix is 1 GiB).
pub const MAX_MIXED_QUBITS: usize = 13;
/// Largest density matrix whose positivity is checked by full diagonalization.
const MAX_SPECTRAL_CHECK_QUBITS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Pure,
    Mixed,
}

/// A normalized pure state or density matrix over labeled qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct QState<T> {
    kind: StateKind,
    labels: Vec<Label>,
    data: Vec<Complex<T>>,
}

pub(crate) fn check_distinct(labels: &[Label]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::LabelCollision(*l));
        }
    }
    Ok(())
}

fn check_capacity(n: usize, kind: StateKind) -> Result<()> {
    let limit = match kind {
        StateKind::Pure => MAX_QUBITS,
        StateKind::Mixed => MAX_MIXED_QUBITS,
    };
    if n > limit {
        return Err(Error::Capacity { requested: n, limit });
    }
    Ok(())
}

impl<T: Scalar> QState<T> {
    /// The zero-qubit state, a convenient seed for tensor products.
    pub fn vacuum() -> Self {
        Self { kind: StateKind::Pure, labels: Vec::new(), data: vec![c_one()] }
    }

    /// Pure state from amplitudes; fails unless normalized within tolerance.
    pub fn pure(labels: Vec<Label>, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let s = Self::unchecked(StateKind::Pure, labels, amplitudes)?;
        s.check_invariants()?;
        Ok(s)
    }

    /// Pure state from amplitudes, rescaled to unit norm.
    pub fn pure_normalized(labels: Vec<Label>, mut amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
        if norm <= T::state_tol() {
            return Err(Error::Invariant("cannot normalize a zero vector".into()));
        }
        amplitudes.iter_mut().for_each(|a| *a = a.unscale(norm));
        Self::pure(labels, amplitudes)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(labels: Vec<Label>, index: usize) -> Result<Self> {
        let dim = 1usize << labels.len();
        if index >= dim {
            return Err(Error::Dimension(format!("basis index {index} out of range {dim}")));
        }
        let mut data = vec![c_zero(); dim];
        data[index] = c_one();
        Self::pure(labels, data)
    }

    /// Computational basis state from a bit string, one bit per label.
    pub fn from_bits(labels: Vec<Label>, bits: &[u8]) -> Result<Self> {
        if bits.len() != labels.len() {
            return Err(Error::Arity { expected: labels.len(), got: bits.len() });
        }
        let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b as usize & 1));
        Self::basis(labels, index)
    }

    /// Density matrix; fails unless Hermitian, unit-trace and positive.
    pub fn mixed(labels: Vec<Label>, matrix: Matrix<T>) -> Result<Self> {
        if matrix.dim() != 1usize << labels.len() {
            return Err(Error::Dimension("density matrix size does not match labels".into()));
        }
        let s = Self::unchecked(StateKind::Mixed, labels, matrix.into_data())?;
        s.check_invariants()?;
        Ok(s)
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(labels: Vec<Label>) -> Result<Self> {
        let dim = 1usize << labels.len();
        let weight = T::one() / T::lit(dim as f64);
        Self::mixed(labels, Matrix::diagonal(&vec![weight; dim]))
    }

    pub(crate) fn unchecked(kind: StateKind, labels: Vec<Label>, data: Vec<Complex<T>>) -> Result<Self> {
        check_distinct(&labels)?;
        check_capacity(labels.len(), kind)?;
        let dim = 1usize << labels.len();
        let expected = match kind {
            StateKind::Pure => dim,
            StateKind::Mixed => dim * dim,
        };
        if data.len() != expected {
            return Err(Error::Dimension(format!(
                "{} amplitudes for {} qubits ({kind:?})",
                data.len(),
                labels.len()
            )));
        }
        Ok(Self { kind, labels, data })
    }

    /// Builds a state from an unnormalized buffer of the same shape as `self`,
    /// rescaling to unit norm (pure) or unit trace (mixed).
    pub(crate) fn renormalized_like(&self, data: Vec<Complex<T>>) -> Result<Self> {
        let weight = raw_weight(self.kind, self.dim(), &data);
        if weight <= T::state_tol() {
            return Err(Error::Invariant("state has vanishing weight".into()));
        }
        let s = match self.kind {
            StateKind::Pure => data.iter().map(|a| a.unscale(weight.sqrt())).collect(),
            StateKind::Mixed => data.iter().map(|a| a.unscale(weight)).collect(),
        };
        let out = Self { kind: self.kind, labels: self.labels.clone(), data: s };
        out.check_invariants()?;
        Ok(out)
    }

    /// Builds a state of the same shape from a buffer that must already be
    /// normalized (e.g. after a unitary).
    pub(crate) fn with_data(&self, data: Vec<Complex<T>>) -> Result<Self> {
        let out = Self { kind: self.kind, labels: self.labels.clone(), data };
        out.check_invariants()?;
        Ok(out)
    }

    #[inline]
    pub fn kind(&self) -> StateKind {
        self.kind
    }

    #[inline]
    pub fn is_pure(&self) -> bool {
        self.kind == StateKind::Pure
    }

    #[inline]
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.labels.len()
    }

    /// Raw buffer: amplitudes for pure states, row-major matrix for mixed.
    #[inline]
    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Amplitudes of a pure state.
    pub fn amplitudes(&self) -> Result<&[Complex<T>]> {
        match self.kind {
            StateKind::Pure => Ok(&self.data),
            StateKind::Mixed => Err(Error::InvalidArgument("mixed state has no amplitudes".into())),
        }
    }

    /// Number of bits of the flat buffer (`n` for pure, `2n` for mixed).
    #[inline]
    pub(crate) fn buffer_bits(&self) -> usize {
        match self.kind {
            StateKind::Pure => self.n(),
            StateKind::Mixed => 2 * self.n(),
        }
    }

    pub fn position(&self, label: Label) -> Result<usize> {
        self.labels.iter().position(|&l| l == label).ok_or(Error::UnknownLabel(label))
    }

    pub fn positions(&self, labels: &[Label]) -> Result<Vec<usize>> {
        check_distinct(labels)?;
        labels.iter().map(|&l| self.position(l)).collect()
    }

    /// Density matrix `ρ` (computed as `|ψ⟩⟨ψ|` for pure states).
    pub fn density_matrix(&self) -> Result<Matrix<T>> {
        check_capacity(self.n(), StateKind::Mixed)?;
        match self.kind {
            StateKind::Pure => Matrix::outer(&self.data, &self.data),
            StateKind::Mixed => Matrix::from_vec(self.dim(), self.data.clone()),
        }
    }

    pub fn to_mixed(&self) -> Result<Self> {
        match self.kind {
            StateKind::Mixed => Ok(self.clone()),
            StateKind::Pure => Self::unchecked(StateKind::Mixed, self.labels.clone(), self.density_matrix()?.into_data()),
        }
    }

    /// Verifies normalization, and for mixed states Hermiticity, unit trace
    /// and positivity.
    pub fn check_invariants(&self) -> Result<()> {
        let tol = T::state_tol();
        match self.kind {
            StateKind::Pure => {
                let norm = self.data.iter().map(|a| a.norm_sqr()).sum::<T>();
                if (norm - T::one()).abs() > tol {
                    return Err(Error::Invariant(format!("norm² = {norm}")));
                }
            }
            StateKind::Mixed => {
                let dim = self.dim();
                let tr = kernel::trace(&self.data, dim);
                if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
                    return Err(Error::Invariant(format!("trace = {tr}")));
                }
                for r in 0..dim {
                    if self.data[r * dim + r].re < -tol {
                        return Err(Error::Invariant(format!("negative population at {r}")));
                    }
                    for c in r + 1..dim {
                        let dev = (self.data[r * dim + c] - self.data[c * dim + r].conj()).norm();
                        if dev > tol {
                            return Err(Error::Invariant(format!("non-Hermitian entry ({r},{c})")));
                        }
                    }
                }
                if self.n() <= MAX_SPECTRAL_CHECK_QUBITS {
                    let m = Matrix::from_vec(dim, self.data.clone())?;
                    let min = m.hermitian_eigenvalues().first().copied().unwrap_or(0.0);
                    if min < -tol.as_f64() {
                        return Err(Error::Invariant(format!("negative eigenvalue {min:e}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Tensor product `self ⊗ other` with concatenated labels.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if let Some(&l) = self.labels.iter().find(|l| other.labels.contains(l)) {
            return Err(Error::LabelCollision(l));
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        if self.kind == StateKind::Pure && other.kind == StateKind::Pure {
            check_capacity(labels.len(), StateKind::Pure)?;
            let data = self
                .data
                .iter()
                .flat_map(|a| other.data.iter().map(move |b| a * b))
                .collect();
            return Self::unchecked(StateKind::Pure, labels, data);
        }
        check_capacity(labels.len(), StateKind::Mixed)?;
        let a = self.density_matrix()?;
        let b = other.density_matrix()?;
        Self::unchecked(StateKind::Mixed, labels, a.kron(&b).into_data())
    }

    /// The same physical state with its qubits listed in `order`.
    pub fn reorder(&self, order: &[Label]) -> Result<Self> {
        if order.len() != self.n() {
            return Err(Error::Arity { expected: self.n(), got: order.len() });
        }
        let positions = self.positions(order)?;
        let n = self.n();
        // New position k holds old position positions[k].
        let remap = |y: usize| -> usize {
            (0..n).fold(0usize, |x, k| {
                if y & kernel::bit(n, k) != 0 {
                    x | kernel::bit(n, positions[k])
                } else {
                    x
                }
            })
        };
        let dim = self.dim();
        let data = match self.kind {
            StateKind::Pure => (0..dim).map(|y| self.data[remap(y)]).collect(),
            StateKind::Mixed => {
                let map: Vec<usize> = (0..dim).map(remap).collect();
                (0..dim * dim).map(|i| self.data[map[i / dim] * dim + map[i % dim]]).collect()
            }
        };
        Ok(Self { kind: self.kind, labels: order.to_vec(), data })
    }

    /// Renames labels; `map(old) = new`.
    pub fn relabel(&self, map: impl Fn(Label) -> Label) -> Result<Self> {
        let labels: Vec<Label> = self.labels.iter().map(|&l| map(l)).collect();
        check_distinct(&labels)?;
        Ok(Self { kind: self.kind, labels, data: self.data.clone() })
    }

    /// `⟨self|other⟩` for pure states; `other` is reordered to match labels.
    pub fn overlap(&self, other: &Self) -> Result<Complex<T>> {
        let other = other.reorder(&self.labels)?;
        Ok(kernel::inner(self.amplitudes()?, other.amplitudes()?))
    }

    /// `|⟨self|other⟩|`, the phase-insensitive comparison for pure states.
    pub fn overlap_modulus(&self, other: &Self) -> Result<T> {
        Ok(self.overlap(other)?.norm())
    }

    /// Applies the qubit permutation `perm` to the qubits `targets`: the
    /// output bit in slot `k` is the input bit in slot `perm[k]`.
    pub fn permute_qubits(&self, targets: &[Label], perm: &[usize]) -> Result<Self> {
        if perm.len() != targets.len() {
            return Err(Error::Arity { expected: targets.len(), got: perm.len() });
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
        }
        let positions = self.positions(targets)?;
        let data = match self.kind {
            StateKind::Pure => kernel::permute_bits(&self.data, self.n(), &positions, perm),
            StateKind::Mixed => {
                let (pos2, perm2) = doubled(&positions, perm, self.n());
                kernel::permute_bits(&self.data, 2 * self.n(), &pos2, &perm2)
            }
        };
        Ok(Self { kind: self.kind, labels: self.labels.clone(), data })
    }

    /// Removes qubits that are in a product computational-basis state with
    /// the rest, returning the remaining state. Fails if they are not.
    pub fn discard_basis_qubits(&self, labels: &[Label], bits: &[u8]) -> Result<Self> {
        if labels.len() != bits.len() {
            return Err(Error::Arity { expected: labels.len(), got: bits.len() });
        }
        let reduced = partial_trace(self, &self.labels.iter().copied().filter(|l| !labels.contains(l)).collect::<Vec<_>>())?;
        let check = partial_trace(self, labels)?;
        let expected = QState::from_bits(labels.to_vec(), bits)?.to_mixed()?;
        let deviation = check.density_matrix()?.max_abs_diff(&expected.density_matrix()?)?;
        if deviation > T::op_tol() {
            return Err(Error::InvalidArgument("qubits are not in the stated basis state".into()));
        }
        if self.is_pure() {
            let keep: Vec<Label> = self.labels.iter().copied().filter(|l| !labels.contains(l)).collect();
            let mut order = keep.clone();
            order.extend_from_slice(labels);
            let r = self.reorder(&order)?;
            let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b as usize & 1));
            let stride = 1usize << labels.len();
            let data = (0..1usize << keep.len()).map(|i| r.data[i * stride + index]).collect();
            return QState::pure_normalized(keep, data);
        }
        Ok(reduced)
    }
}

/// Extends row positions and a permutation to the `2n`-bit density buffer.
fn doubled(positions: &[usize], perm: &[usize], n: usize) -> (Vec<usize>, Vec<usize>) {
    let k = positions.len();
    let pos = positions.iter().copied().chain(positions.iter().map(|p| p + n)).collect();
    let p = perm.iter().copied().chain(perm.iter().map(|q| q + k)).collect();
    (pos, p)
}

fn raw_weight<T: Scalar>(kind: StateKind, dim: usize, data: &[Complex<T>]) -> T {
    match kind {
        StateKind::Pure => data.iter().map(|a| a.norm_sqr()).sum(),
        StateKind::Mixed => kernel::trace(data, dim).re,
    }
}

/// Applies an operator (padded with identity) to a state: `Uψ` or `UρU†`.
///
/// The result is required to satisfy the state invariants, so `op` should be
/// unitary; use [`measure_pvm`] for projections.
pub fn apply<T: Scalar>(op: &DenseOperator<T>, s: &QState<T>) -> Result<QState<T>> {
    let positions = s.positions(op.targets())?;
    let data = match s.kind {
        StateKind::Pure => kernel::apply_local(&s.data, s.n(), &positions, op.matrix(), false),
        StateKind::Mixed => {
            let n = s.n();
            let rows = kernel::apply_local(&s.data, 2 * n, &positions, op.matrix(), false);
            let cols: Vec<usize> = positions.iter().map(|p| p + n).collect();
            kernel::apply_local(&rows, 2 * n, &cols, op.matrix(), true)
        }
    };
    s.with_data(data)
}

/// Index bookkeeping for splitting a basis index into kept and traced parts.
struct Split {
    keep_dim: usize,
    env_dim: usize,
    /// `index[a * env_dim + e]` is the full index of kept value `a`, env `e`.
    index: Vec<usize>,
}

fn split<T: Scalar>(s: &QState<T>, keep: &[Label]) -> Result<Split> {
    let n = s.n();
    let keep_pos = s.positions(keep)?;
    let env_pos: Vec<usize> = (0..n).filter(|p| !keep_pos.contains(p)).collect();
    let (keep_off, _) = kernel::local_offsets(n, &keep_pos);
    let (env_off, _) = kernel::local_offsets(n, &env_pos);
    let index = keep_off.iter().flat_map(|&a| env_off.iter().map(move |&e| a | e)).collect();
    Ok(Split { keep_dim: keep_off.len(), env_dim: env_off.len(), index })
}

/// Reduced density matrix on `keep`, with labels in the requested order.
pub fn partial_trace<T: Scalar>(s: &QState<T>, keep: &[Label]) -> Result<QState<T>> {
    if keep.is_empty() {
        return Err(Error::InvalidArgument("partial trace needs at least one kept qubit".into()));
    }
    check_capacity(keep.len(), StateKind::Mixed)?;
    let sp = split(s, keep)?;
    let (kd, ed) = (sp.keep_dim, sp.env_dim);
    let mut rho = vec![c_zero(); kd * kd];
    match s.kind {
        StateKind::Pure => {
            let m: Vec<Complex<T>> = sp.index.iter().map(|&i| s.data[i]).collect();
            for a in 0..kd {
                let ra = &m[a * ed..(a + 1) * ed];
                for b in a..kd {
                    let v = kernel::inner(&m[b * ed..(b + 1) * ed], ra);
                    rho[a * kd + b] = v;
                    rho[b * kd + a] = v.conj();
                }
            }
        }
        StateKind::Mixed => {
            let dim = s.dim();
            for a in 0..kd {
                for b in 0..kd {
                    rho[a * kd + b] = (0..ed).fold(c_zero(), |acc, e| {
                        acc + s.data[sp.index[a * ed + e] * dim + sp.index[b * ed + e]]
                    });
                }
            }
        }
    }
    let out = QState::unchecked(StateKind::Mixed, keep.to_vec(), rho)?;
    out.check_invariants()?;
    Ok(out)
}

/// `⟨ψ|O|ψ⟩` or `Tr(ρO)` with `O` padded by identity.
pub fn expectation<T: Scalar>(s: &QState<T>, op: &DenseOperator<T>) -> Result<Complex<T>> {
    let positions = s.positions(op.targets())?;
    match s.kind {
        StateKind::Pure => {
            let applied = kernel::apply_local(&s.data, s.n(), &positions, op.matrix(), false);
            Ok(kernel::inner(&s.data, &applied))
        }
        StateKind::Mixed => {
            let (offsets, mask) = kernel::local_offsets(s.n(), &positions);
            let dim = s.dim();
            let m = op.matrix();
            let mut acc = c_zero();
            for base in (0..dim).filter(|b| b & mask == 0) {
                for (a, &oa) in offsets.iter().enumerate() {
                    for (b, &ob) in offsets.iter().enumerate() {
                        acc = acc + m.get(a, b) * s.data[(base + ob) * dim + base + oa];
                    }
                }
            }
            Ok(acc)
        }
    }
}

/// Real part of [`expectation`], for Hermitian observables.
pub fn expectation_real<T: Scalar>(s: &QState<T>, op: &DenseOperator<T>) -> Result<T> {
    Ok(expectation(s, op)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::{build_pauli, Axis};

    fn singlet() -> QState<f64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        QState::pure(
            vec![0, 1],
            vec![c_zero(), Complex::new(h, 0.0), Complex::new(-h, 0.0), c_zero()],
        )
        .unwrap()
    }

    #[test]
    fn singlet_marginal_is_maximally_mixed() {
        let r = partial_trace(&singlet(), &[0]).unwrap();
        let expected = Matrix::<f64>::diagonal(&[0.5, 0.5]);
        assert!(r.density_matrix().unwrap().max_abs_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn partial_trace_of_product_basis_state() {
        let s = QState::<f64>::from_bits(vec![0, 1], &[0, 0]).unwrap();
        let r = partial_trace(&s, &[0]).unwrap();
        assert!((r.density_matrix().unwrap().get(0, 0).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singlet_zz_anticorrelation() {
        let zz = kron(&build_pauli::<f64>(Axis::Z, 0), &build_pauli(Axis::Z, 1)).unwrap();
        assert!((expectation_real(&singlet(), &zz).unwrap() + 1.0).abs() < 1e-12);
        let mixed = singlet().to_mixed().unwrap();
        assert!((expectation_real(&mixed, &zz).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn zz_on_01_flips_sign() {
        let zz = kron(&build_pauli::<f64>(Axis::Z, 0), &build_pauli(Axis::Z, 1)).unwrap();
        let s = QState::<f64>::from_bits(vec![0, 1], &[0, 1]).unwrap();
        let out = apply(&zz, &s).unwrap();
        assert!((out.overlap(&s).unwrap().re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn kron_rejects_overlapping_labels() {
        let x = build_pauli::<f64>(Axis::X, 3);
        assert_eq!(kron(&x, &x), Err(Error::LabelCollision(3)));
    }

    #[test]
    fn reorder_moves_bits() {
        let s = QState::<f64>::from_bits(vec![7, 9, 4], &[1, 0, 0]).unwrap();
        let r = s.reorder(&[9, 4, 7]).unwrap();
        assert_eq!(r, QState::from_bits(vec![9, 4, 7], &[0, 0, 1]).unwrap());
    }

    #[test]
    fn capacity_is_enforced() {
        let labels: Vec<Label> = (0..19).collect();
        assert!(matches!(QState::<f64>::basis(labels, 0), Err(Error::Capacity { .. })));
    }

    #[test]
    fn empty_keep_is_rejected() {
        assert!(partial_trace(&singlet(), &[]).is_err());
    }
}
