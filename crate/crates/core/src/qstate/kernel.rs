//! Bit-level kernels over flat amplitude buffers.
//!
//! A buffer of `nbits` bits is indexed big-endian: position 0 is the most
//! significant bit. A density matrix over `n` qubits is treated as a buffer of
//! `2n` bits, rows in positions `0..n` and columns in `n..2n`.

use num_complex::Complex;

use crate::linalg::Matrix;
use crate::scalar::{c_zero, omega_pow, Scalar};

#[inline]
pub(crate) fn bit(nbits: usize, pos: usize) -> usize {
    1usize << (nbits - 1 - pos)
}

/// For an operator acting on `positions`, the buffer offset of each local
/// operator index (local bit 0 is the operator's most significant bit).
pub(crate) fn local_offsets(nbits: usize, positions: &[usize]) -> (Vec<usize>, usize) {
    let k = positions.len();
    let bits: Vec<usize> = positions.iter().map(|&p| bit(nbits, p)).collect();
    let mask = bits.iter().fold(0, |m, b| m | b);
    let offsets = (0..1usize << k)
        .map(|l| (0..k).filter(|&j| (l >> (k - 1 - j)) & 1 == 1).fold(0, |o, j| o | bits[j]))
        .collect();
    (offsets, mask)
}

/// Applies `m` to the qubits at `positions`, optionally with conjugated entries.
/// Zero entries are skipped, which pays off for block-structured operators.
pub(crate) fn apply_local<T: Scalar>(
    data: &[Complex<T>],
    nbits: usize,
    positions: &[usize],
    m: &Matrix<T>,
    conjugate: bool,
) -> Vec<Complex<T>> {
    let (offsets, mask) = local_offsets(nbits, positions);
    let d = offsets.len();
    let rows: Vec<Vec<(usize, Complex<T>)>> = (0..d)
        .map(|r| {
            (0..d)
                .filter_map(|c| {
                    let z = m.get(r, c);
                    (z != c_zero()).then(|| (offsets[c], if conjugate { z.conj() } else { z }))
                })
                .collect()
        })
        .collect();
    let mut out = vec![c_zero(); data.len()];
    for base in (0..data.len()).filter(|b| b & mask == 0) {
        for (row, &o) in rows.iter().zip(&offsets) {
            out[base + o] = row.iter().fold(c_zero(), |acc, (c, z)| acc + z * data[base + c]);
        }
    }
    out
}

/// Gathers `data` through the qubit permutation `perm` on `positions`: the
/// output bit in register slot `k` is the input bit in slot `perm[k]`.
pub(crate) fn permute_bits<T: Scalar>(
    data: &[Complex<T>],
    nbits: usize,
    positions: &[usize],
    perm: &[usize],
) -> Vec<Complex<T>> {
    let bits: Vec<usize> = positions.iter().map(|&p| bit(nbits, p)).collect();
    let mask = bits.iter().fold(0, |m, b| m | b);
    (0..data.len())
        .map(|y| {
            let mut x = y & !mask;
            for (k, &b) in bits.iter().enumerate() {
                if y & b != 0 {
                    x |= bits[perm[k]];
                }
            }
            data[x]
        })
        .collect()
}

/// `P_τ = (1/3) Σ_k ω^{−τk} C^k` applied through permutation gathers.
///
/// With `conjugate` the coefficients are conjugated, which turns `P_τ` into
/// `P_{−τ}`; this is the form needed on the column side of `ρ P_τ`.
pub(crate) fn sector_project<T: Scalar>(
    data: &[Complex<T>],
    nbits: usize,
    positions: &[usize],
    cycle: &[usize],
    tau: u8,
    conjugate: bool,
) -> Vec<Complex<T>> {
    let tau = if conjugate { (3 - tau as i64) % 3 } else { tau as i64 };
    let once = permute_bits(data, nbits, positions, cycle);
    let twice = permute_bits(&once, nbits, positions, cycle);
    let third = T::lit(1.0 / 3.0);
    let (w1, w2) = (omega_pow::<T>(-tau), omega_pow::<T>(-2 * tau));
    data.iter()
        .zip(&once)
        .zip(&twice)
        .map(|((a, b), c)| (a + b * w1 + c * w2).scale(third))
        .collect()
}

/// The projector onto `τ_A + τ_B ≡ 0 (mod 3)`. It equals
/// `Σ_a P^B_{−a} P^A_a = (1/3)(I + U + U²)` with `U = C_A C_B`, a real
/// combination of permutations, so `conjugate` does not change it.
pub(crate) fn binding_project<T: Scalar>(
    data: &[Complex<T>],
    nbits: usize,
    pos_a: &[usize],
    pos_b: &[usize],
    cycle: &[usize],
    _conjugate: bool,
) -> Vec<Complex<T>> {
    let positions: Vec<usize> = pos_a.iter().chain(pos_b).copied().collect();
    let n = pos_a.len();
    let perm: Vec<usize> = cycle.iter().copied().chain(cycle.iter().map(|&k| k + n)).collect();
    let once = permute_bits(data, nbits, &positions, &perm);
    let twice = permute_bits(&once, nbits, &positions, &perm);
    let third = T::lit(1.0 / 3.0);
    data.iter().zip(&once).zip(&twice).map(|((a, b), c)| (a + b + c).scale(third)).collect()
}

/// `Σ_x conj(u_x) v_x`.
pub(crate) fn inner<T: Scalar>(u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    u.iter().zip(v).fold(c_zero(), |acc, (a, b)| acc + a.conj() * b)
}

/// Trace of a row-major `dim × dim` buffer.
pub(crate) fn trace<T: Scalar>(data: &[Complex<T>], dim: usize) -> Complex<T> {
    (0..dim).fold(c_zero(), |acc, i| acc + data[i * dim + i])
}
