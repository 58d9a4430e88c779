//! A minimal dense tensor with named indices and pairwise contraction.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{c_zero, Scalar};
use crate::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Index {
    /// A physical qubit.
    Phys(Label),
    /// A virtual leg of triangle `t`, leg `i`.
    Leg(usize, usize),
    /// The bond between the two triangles of Posner `k`.
    Internal(usize),
}

/// Row-major data; the first index varies slowest.
#[derive(Clone, Debug)]
pub(crate) struct Tensor<T> {
    pub indices: Vec<(Index, usize)>,
    pub data: Vec<Complex<T>>,
}

/// Flat offsets of every assignment of the indices at `which`, enumerated in
/// row-major order over those indices.
fn offsets(dims: &[usize], which: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let mut out = vec![0usize];
    for &w in which {
        let (dim, stride) = (dims[w], strides[w]);
        out = out.iter().flat_map(|&o| (0..dim).map(move |v| o + v * stride)).collect();
    }
    out
}

impl<T: Scalar> Tensor<T> {
    pub fn new(indices: Vec<(Index, usize)>, data: Vec<Complex<T>>) -> Result<Self> {
        let size: usize = indices.iter().map(|(_, d)| d).product();
        if size != data.len() {
            return Err(Error::Dimension(format!("tensor of size {size} given {} entries", data.len())));
        }
        Ok(Self { indices, data })
    }

    fn dims(&self) -> Vec<usize> {
        self.indices.iter().map(|(_, d)| *d).collect()
    }

    fn position(&self, index: Index) -> Option<usize> {
        self.indices.iter().position(|(i, _)| *i == index)
    }

    pub fn shares_index(&self, other: &Self) -> bool {
        self.indices.iter().any(|(i, _)| other.position(*i).is_some())
    }

    /// Sums over all indices the two tensors share; the result carries the
    /// free indices of `self` followed by those of `other`.
    pub fn contract(&self, other: &Self) -> Result<Self> {
        let mut shared_a = Vec::new();
        let mut shared_b = Vec::new();
        for (ka, (index, dim)) in self.indices.iter().enumerate() {
            if let Some(kb) = other.position(*index) {
                if other.indices[kb].1 != *dim {
                    return Err(Error::Dimension(format!("index {index:?} has mismatched dimensions")));
                }
                shared_a.push(ka);
                shared_b.push(kb);
            }
        }
        let free_a: Vec<usize> = (0..self.indices.len()).filter(|k| !shared_a.contains(k)).collect();
        let free_b: Vec<usize> = (0..other.indices.len()).filter(|k| !shared_b.contains(k)).collect();
        let (da, db) = (self.dims(), other.dims());
        let (fa, sa) = (offsets(&da, &free_a), offsets(&da, &shared_a));
        let (fb, sb) = (offsets(&db, &free_b), offsets(&db, &shared_b));
        let mut data = Vec::with_capacity(fa.len() * fb.len());
        for &oa in &fa {
            for &ob in &fb {
                let v = sa.iter().zip(&sb).fold(c_zero(), |acc, (&x, &y)| acc + self.data[oa + x] * other.data[ob + y]);
                data.push(v);
            }
        }
        let indices =
            free_a.iter().map(|&k| self.indices[k]).chain(free_b.iter().map(|&k| other.indices[k])).collect();
        Ok(Self { indices, data })
    }

    /// The same tensor with its indices in `order`.
    pub fn permuted(&self, order: &[Index]) -> Result<Self> {
        if order.len() != self.indices.len() {
            return Err(Error::Dimension("permutation must list every index".into()));
        }
        let which = order
            .iter()
            .map(|i| self.position(*i).ok_or_else(|| Error::Lattice(format!("no index {i:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let gather = offsets(&self.dims(), &which);
        Ok(Self {
            indices: which.iter().map(|&k| self.indices[k]).collect(),
            data: gather.iter().map(|&o| self.data[o]).collect(),
        })
    }
}

/// Contracts a network, always joining the accumulated tensor with the
/// first remaining tensor that shares an index with it.
pub(crate) fn contract_network<T: Scalar>(mut tensors: Vec<Tensor<T>>) -> Result<Tensor<T>> {
    if tensors.is_empty() {
        return Err(Error::Lattice("empty tensor network".into()));
    }
    let mut acc = tensors.remove(0);
    while !tensors.is_empty() {
        let next = tensors.iter().position(|t| acc.shares_index(t)).unwrap_or(0);
        acc = acc.contract(&tensors.remove(next))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn matrix_product_and_permutation() {
        let a = Tensor::new(vec![(Index::Phys(0), 2), (Index::Internal(0), 2)], vec![c(1.0), c(2.0), c(3.0), c(4.0)]).unwrap();
        let b = Tensor::new(vec![(Index::Internal(0), 2), (Index::Phys(1), 2)], vec![c(0.0), c(1.0), c(1.0), c(0.0)]).unwrap();
        let ab = a.contract(&b).unwrap();
        assert_eq!(ab.data, vec![c(2.0), c(1.0), c(4.0), c(3.0)]);
        let t = ab.permuted(&[Index::Phys(1), Index::Phys(0)]).unwrap();
        assert_eq!(t.data, vec![c(2.0), c(4.0), c(1.0), c(3.0)]);
    }
}
