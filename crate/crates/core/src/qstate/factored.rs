//! Operators applied through kernels instead of embedded matrices, and the
//! one- and two-sided actions they induce on pure and mixed states.

use num_complex::Complex;

use crate::linalg::Matrix;
use crate::qstate::{kernel, QState, StateKind};
use crate::scalar::{c_zero, Scalar};

/// A linear map on a subset of qubit positions of a state buffer.
pub(crate) trait LocalMap<T: Scalar> {
    /// Applies the map with every position shifted by `offset`; `conjugate`
    /// requests the entrywise-conjugated operator.
    fn apply_at(&self, data: &[Complex<T>], nbits: usize, offset: usize, conjugate: bool) -> Vec<Complex<T>>;
}

impl<T: Scalar, M: LocalMap<T> + ?Sized> LocalMap<T> for &M {
    fn apply_at(&self, data: &[Complex<T>], nbits: usize, offset: usize, conjugate: bool) -> Vec<Complex<T>> {
        (**self).apply_at(data, nbits, offset, conjugate)
    }
}

fn shifted(positions: &[usize], offset: usize) -> Vec<usize> {
    positions.iter().map(|p| p + offset).collect()
}

/// A dense matrix on fixed positions.
pub(crate) struct DenseMap<'a, T> {
    pub positions: Vec<usize>,
    pub matrix: &'a Matrix<T>,
}

impl<T: Scalar> LocalMap<T> for DenseMap<'_, T> {
    fn apply_at(&self, data: &[Complex<T>], nbits: usize, offset: usize, conjugate: bool) -> Vec<Complex<T>> {
        kernel::apply_local(data, nbits, &shifted(&self.positions, offset), self.matrix, conjugate)
    }
}

/// The sector projector `P_τ` of a six-qubit register.
pub(crate) struct SectorMap<'a> {
    pub positions: Vec<usize>,
    pub cycle: &'a [usize],
    pub tau: u8,
}

impl<T: Scalar> LocalMap<T> for SectorMap<'_> {
    fn apply_at(&self, data: &[Complex<T>], nbits: usize, offset: usize, conjugate: bool) -> Vec<Complex<T>> {
        kernel::sector_project(data, nbits, &shifted(&self.positions, offset), self.cycle, self.tau, conjugate)
    }
}

/// The binding projector of two six-qubit registers.
pub(crate) struct BindingMap<'a> {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub cycle: &'a [usize],
}

impl<T: Scalar> LocalMap<T> for BindingMap<'_> {
    fn apply_at(&self, data: &[Complex<T>], nbits: usize, offset: usize, conjugate: bool) -> Vec<Complex<T>> {
        kernel::binding_project(
            data,
            nbits,
            &shifted(&self.a, offset),
            &shifted(&self.b, offset),
            self.cycle,
            conjugate,
        )
    }
}

/// `I − M`.
pub(crate) struct Complement<M>(pub M);

impl<T: Scalar, M: LocalMap<T>> LocalMap<T> for Complement<M> {
    fn apply_at(&self, data: &[Complex<T>], nbits: usize, offset: usize, conjugate: bool) -> Vec<Complex<T>> {
        let m = self.0.apply_at(data, nbits, offset, conjugate);
        data.iter().zip(m).map(|(a, b)| a - b).collect()
    }
}

/// `Mψ` for pure states, `Mρ` for mixed states.
pub(crate) fn left<T: Scalar>(s: &QState<T>, m: &impl LocalMap<T>) -> Vec<Complex<T>> {
    m.apply_at(s.data(), s.buffer_bits(), 0, false)
}

/// `ρM` for a Hermitian `M`, acting on a mixed buffer of the state's shape.
pub(crate) fn right<T: Scalar>(s: &QState<T>, data: &[Complex<T>], m: &impl LocalMap<T>) -> Vec<Complex<T>> {
    // (ρM)[r,c] = Σ_b M^T[c,b] ρ[r,b] and M^T = conj(M) for Hermitian M.
    m.apply_at(data, 2 * s.n(), s.n(), true)
}

/// `Mψ` or `MρM†` for a Hermitian `M`.
pub(crate) fn sandwich<T: Scalar>(s: &QState<T>, m: &impl LocalMap<T>) -> Vec<Complex<T>> {
    let l = left(s, m);
    match s.kind() {
        StateKind::Pure => l,
        StateKind::Mixed => right(s, &l, m),
    }
}

/// `⟨ψ|M|ψ⟩` or `Tr(Mρ)`.
pub(crate) fn weight<T: Scalar>(s: &QState<T>, m: &impl LocalMap<T>) -> Complex<T> {
    let l = left(s, m);
    match s.kind() {
        StateKind::Pure => kernel::inner(s.data(), &l),
        StateKind::Mixed => kernel::trace(&l, s.dim()),
    }
}

/// Sums buffers elementwise with coefficients.
pub(crate) fn combine<T: Scalar>(terms: &[(Complex<T>, &[Complex<T>])]) -> Vec<Complex<T>> {
    let len = terms.first().map_or(0, |t| t.1.len());
    let mut out = vec![c_zero(); len];
    for (coef, data) in terms {
        for (o, d) in out.iter_mut().zip(data.iter()) {
            *o = *o + coef * d;
        }
    }
    out
}
