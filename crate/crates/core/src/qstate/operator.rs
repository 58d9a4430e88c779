use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::qstate::{check_distinct, kernel};
use crate::scalar::Scalar;
use crate::Label;

/// A `2^k × 2^k` operator together with the ordered qubit labels it acts on.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<T> {
    matrix: Matrix<T>,
    targets: Vec<Label>,
}

impl<T: Scalar> DenseOperator<T> {
    pub fn new(matrix: Matrix<T>, targets: Vec<Label>) -> Result<Self> {
        check_distinct(&targets)?;
        if matrix.dim() != 1usize << targets.len() {
            return Err(Error::Dimension(format!(
                "a {}-dimensional matrix cannot act on {} qubits",
                matrix.dim(),
                targets.len()
            )));
        }
        Ok(Self { matrix, targets })
    }

    pub fn identity(targets: Vec<Label>) -> Result<Self> {
        Self::new(Matrix::identity(1 << targets.len()), targets)
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    #[inline]
    pub fn targets(&self) -> &[Label] {
        &self.targets
    }

    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.adjoint(), targets: self.targets.clone() }
    }

    /// `self · other`; both must act on the same ordered labels.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.same_targets(other)?;
        Ok(Self { matrix: self.matrix.matmul(&other.matrix)?, targets: self.targets.clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_targets(other)?;
        Ok(Self { matrix: self.matrix.add(&other.matrix)?, targets: self.targets.clone() })
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { matrix: self.matrix.scale(s), targets: self.targets.clone() }
    }

    fn same_targets(&self, other: &Self) -> Result<()> {
        if self.targets != other.targets {
            return Err(Error::InvalidArgument(format!(
                "operators act on {:?} and {:?}",
                self.targets, other.targets
            )));
        }
        Ok(())
    }

    /// Matrix of this operator padded with identities onto `labels`, in that
    /// label order.
    pub fn embed(&self, labels: &[Label]) -> Result<Matrix<T>> {
        check_distinct(labels)?;
        let n = labels.len();
        let positions = self
            .targets
            .iter()
            .map(|t| labels.iter().position(|l| l == t).ok_or(Error::UnknownLabel(*t)))
            .collect::<Result<Vec<_>>>()?;
        let (offsets, mask) = kernel::local_offsets(n, &positions);
        let dim = 1usize << n;
        let mut out = Matrix::zeros(dim);
        for base in (0..dim).filter(|b| b & mask == 0) {
            for (r, &ro) in offsets.iter().enumerate() {
                for (c, &co) in offsets.iter().enumerate() {
                    out.set(base + ro, base + co, self.matrix.get(r, c));
                }
            }
        }
        Ok(out)
    }

    /// Same matrix acting on a different ordered label list.
    pub fn relabeled(&self, targets: Vec<Label>) -> Result<Self> {
        Self::new(self.matrix.clone(), targets)
    }
}

/// Tensor product with concatenated target labels.
pub fn kron<T: Scalar>(a: &DenseOperator<T>, b: &DenseOperator<T>) -> Result<DenseOperator<T>> {
    if let Some(&l) = a.targets.iter().find(|l| b.targets.contains(l)) {
        return Err(Error::LabelCollision(l));
    }
    let mut targets = a.targets.clone();
    targets.extend_from_slice(&b.targets);
    DenseOperator::new(a.matrix.kron(&b.matrix), targets)
}
