//! The two site tensors of the AKLT′ PEPS and their contraction.
//!
//! `T⁺_{a; v₁ v₂ v₃}` has physical index `a = a₁a₂a₃`, two bond legs
//! `v₁, v₂ ∈ {0, 1}` and a Posner leg `v₃ = 3ṽ + τ ∈ {0..5}`:
//!
//! `T⁺ = (−√3)^{v₁+v₂+ṽ} ⟨a|P_τ|v₁ v₂ ṽ⟩`
//!
//! with `P_τ` the trio sector projector. `T⁻` absorbs the intra-Posner
//! singlet and the opposite sector, so that `v₃` is contracted by a plain
//! Kronecker delta:
//!
//! `T⁻ = (−√3)^{u₁+u₂−ṽ} Σ_w ε(ṽ, w) ⟨a|P_{−τ}|u₁ u₂ w⟩`.
//!
//! Bond legs between triangles contract with `D⁻¹ ε D⁻¹`, `D = diag(1, −√3)`,
//! which removes the `(−√3)` weights and leaves one singlet per edge.

use num_complex::Complex;

use crate::aklt::lattice::{Lattice, Layout};
use crate::aklt::tensor::{contract_network, Index, Tensor};
use crate::error::{Error, Result};
use crate::qstate::QState;
use crate::scalar::{c_real, c_zero, Scalar};
use crate::spin::build_tau_projector;

pub const PHYS_DIM: usize = 8;
pub const TENSOR_SIZE: usize = PHYS_DIM * 2 * 2 * 6;

#[derive(Clone, Debug, PartialEq)]
pub struct PepsTensor<T> {
    pub name: &'static str,
    data: Vec<Complex<T>>,
}

fn flat(a: usize, v1: usize, v2: usize, v3: usize) -> usize {
    ((a * 2 + v1) * 2 + v2) * 6 + v3
}

/// `ε(0,1) = 1`, `ε(1,0) = −1`.
fn epsilon(x: usize, y: usize) -> f64 {
    match (x, y) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

/// Diagonal of `D⁻¹`.
fn d_inv(v: usize) -> f64 {
    if v == 0 {
        1.0
    } else {
        -1.0 / 3f64.sqrt()
    }
}

impl<T: Scalar> PepsTensor<T> {
    /// Entry at physical bits `a = [a₁, a₂, a₃]` and legs `v₁, v₂, v₃`.
    pub fn get(&self, a: [u8; 3], v1: usize, v2: usize, v3: usize) -> Complex<T> {
        let a = (a[0] as usize) << 2 | (a[1] as usize) << 1 | a[2] as usize;
        self.data[flat(a, v1, v2, v3)]
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }
}

/// `(T⁺, T⁻)`.
pub fn build_peps_tensors<T: Scalar>() -> Result<(PepsTensor<T>, PepsTensor<T>)> {
    let trio = [0, 1, 2];
    let p: Vec<_> = (0..3u8).map(|t| build_tau_projector::<T>(t, &trio)).collect::<Result<_>>()?;
    let weight = |k: i32| T::lit((-(3f64.sqrt())).powi(k));
    let mut plus = vec![c_zero(); TENSOR_SIZE];
    let mut minus = vec![c_zero(); TENSOR_SIZE];
    for a in 0..PHYS_DIM {
        for v1 in 0..2 {
            for v2 in 0..2 {
                for v3 in 0..6 {
                    let (vt, tau) = (v3 / 3, v3 % 3);
                    let legs = (v1 << 2) | (v2 << 1);
                    let w = (v1 + v2 + vt) as i32;
                    plus[flat(a, v1, v2, v3)] = p[tau].matrix().get(a, legs | vt) * weight(w);
                    let conj_sector = p[(3 - tau) % 3].matrix();
                    let m = (0..2).fold(c_zero(), |acc, x| acc + conj_sector.get(a, legs | x).scale(T::lit(epsilon(vt, x))));
                    minus[flat(a, v1, v2, v3)] = m * weight((v1 + v2) as i32 - vt as i32);
                }
            }
        }
    }
    Ok((PepsTensor { name: "T+", data: plus }, PepsTensor { name: "T-", data: minus }))
}

/// Structural rule: both tensors conserve the number of up
/// spins between the physical index and the legs they represent.
pub fn conserves_weight<T: Scalar>(t: &PepsTensor<T>, tol: T) -> bool {
    let minus = t.name == "T-";
    (0..PHYS_DIM).all(|a| {
        (0..2).all(|v1| {
            (0..2).all(|v2| {
                (0..6).all(|v3| {
                    let vt = v3 / 3;
                    let legs = v1 + v2 + if minus { 1 - vt } else { vt };
                    (a.count_ones() as usize == legs) || t.data[flat(a, v1, v2, v3)].norm() <= tol
                })
            })
        })
    })
}

fn site_tensor<T: Scalar>(t: &PepsTensor<T>, triangle: usize, posner: usize) -> Result<Tensor<T>> {
    let q = 3 * triangle;
    Tensor::new(
        vec![
            (Index::Phys(q), 2),
            (Index::Phys(q + 1), 2),
            (Index::Phys(q + 2), 2),
            (Index::Leg(triangle, 0), 2),
            (Index::Leg(triangle, 1), 2),
            (Index::Internal(posner), 6),
        ],
        t.data.clone(),
    )
}

fn two_leg<T: Scalar>(a: Index, b: Index, f: impl Fn(usize, usize) -> f64) -> Result<Tensor<T>> {
    let data = (0..4).map(|k| c_real(T::lit(f(k >> 1, k & 1)))).collect();
    Tensor::new(vec![(a, 2), (b, 2)], data)
}

/// The PEPS state on the lattice's leg qubits and stub qubits (labels
/// `0..n_qubits`), normalized. Boundary legs are closed by singlets with
/// their stubs, as in the circuit construction.
pub fn contract_peps<T: Scalar>(lattice: &Lattice) -> Result<QState<T>> {
    let layout: Layout = lattice.layout()?;
    let (plus, minus) = build_peps_tensors::<T>()?;
    let mut tensors = Vec::new();
    for (k, &(t, u)) in layout.posners.iter().enumerate() {
        tensors.push(site_tensor(&plus, t, k)?);
        tensors.push(site_tensor(&minus, u, k)?);
        // Boundary legs of this Posner, so each Posner is closed off early.
        for &(leg, stub) in layout.boundary.iter().filter(|(leg, _)| leg.0 == t || leg.0 == u) {
            if leg.1 == 2 {
                return Err(Error::Lattice(format!("leg 2 of triangle {} is reserved for its Posner partner", leg.0)));
            }
            tensors.push(two_leg(Index::Leg(leg.0, leg.1), Index::Phys(stub), |v, s| d_inv(v) * epsilon(v, s))?);
        }
        for &(a, b) in layout.edges.iter().filter(|e| !layout.is_internal(e) && (e.0 .0 == t || e.0 .0 == u)) {
            tensors.push(two_leg(Index::Leg(a.0, a.1), Index::Leg(b.0, b.1), |x, y| d_inv(x) * epsilon(x, y) * d_inv(y))?);
        }
    }
    let net = contract_network(tensors)?;
    if let Some((index, _)) = net.indices.iter().find(|(i, _)| !matches!(i, Index::Phys(_))) {
        return Err(Error::Lattice(format!("virtual leg {index:?} is not matched")));
    }
    let order: Vec<Index> = (0..layout.n_qubits()).map(Index::Phys).collect();
    let net = net.permuted(&order)?;
    QState::pure_normalized((0..layout.n_qubits()).collect(), net.data)
}
