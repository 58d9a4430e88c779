//! The symmetric trio basis and the 64-element charge eigenbasis built from it.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::scalar::{c_one, c_zero, omega_pow, Scalar};

/// Names of the eight trio basis states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TrioName {
    Up,
    W,
    WBar,
    Down,
    Omega,
    OmegaBar,
    Omega2,
    Omega2Bar,
}

impl TrioName {
    pub const ALL: [TrioName; 8] = [
        TrioName::Up,
        TrioName::W,
        TrioName::WBar,
        TrioName::Down,
        TrioName::Omega,
        TrioName::OmegaBar,
        TrioName::Omega2,
        TrioName::Omega2Bar,
    ];
    /// The `s = 3/2` quartet.
    pub const QUARTET: [TrioName; 4] = [TrioName::Up, TrioName::W, TrioName::WBar, TrioName::Down];

    pub fn symbol(self) -> &'static str {
        match self {
            TrioName::Up => "000",
            TrioName::W => "W",
            TrioName::WBar => "W̄",
            TrioName::Down => "111",
            TrioName::Omega => "ω",
            TrioName::OmegaBar => "ω̄",
            TrioName::Omega2 => "ω²",
            TrioName::Omega2Bar => "ω̄²",
        }
    }

    /// Twice the trio spin.
    pub fn two_s(self) -> u8 {
        match self {
            TrioName::Up | TrioName::W | TrioName::WBar | TrioName::Down => 3,
            _ => 1,
        }
    }

    /// Twice the trio `S^z` eigenvalue.
    pub fn two_m(self) -> i8 {
        match self {
            TrioName::Up => 3,
            TrioName::W | TrioName::Omega | TrioName::Omega2 => 1,
            TrioName::WBar | TrioName::OmegaBar | TrioName::Omega2Bar => -1,
            TrioName::Down => -3,
        }
    }

    /// Cycle label: the trio cycle acts as `ω^τ`.
    pub fn tau(self) -> u8 {
        match self {
            TrioName::Omega | TrioName::OmegaBar => 1,
            TrioName::Omega2 | TrioName::Omega2Bar => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for TrioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The eight amplitudes of a trio basis state, with `|m₁m₂m₃⟩` at index
/// `4m₁ + 2m₂ + m₃`.
pub fn trio_vector<T: Scalar>(name: TrioName) -> [Complex<T>; 8] {
    let mut v = [c_zero(); 8];
    let r = T::one() / T::lit(3.0).sqrt();
    let w = |k: i64| omega_pow::<T>(k).scale(r);
    let one = Complex::new(r, T::zero());
    match name {
        TrioName::Up => v[0b000] = c_one(),
        TrioName::Down => v[0b111] = c_one(),
        TrioName::W => [0b100, 0b010, 0b001].iter().for_each(|&i| v[i] = one),
        TrioName::WBar => [0b011, 0b101, 0b110].iter().for_each(|&i| v[i] = one),
        TrioName::Omega => {
            v[0b100] = one;
            v[0b010] = w(2);
            v[0b001] = w(1);
        }
        TrioName::OmegaBar => {
            v[0b011] = one;
            v[0b101] = w(2);
            v[0b110] = w(1);
        }
        TrioName::Omega2 => {
            v[0b100] = one;
            v[0b010] = w(1);
            v[0b001] = w(2);
        }
        TrioName::Omega2Bar => {
            v[0b011] = one;
            v[0b101] = w(1);
            v[0b110] = w(2);
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrioBasisElement<T> {
    pub name: TrioName,
    pub vector: Vec<Complex<T>>,
    pub two_s: u8,
    pub two_m: i8,
    pub tau: u8,
}

impl<T: Scalar> TrioBasisElement<T> {
    pub fn new(name: TrioName) -> Self {
        Self { name, vector: trio_vector(name).to_vec(), two_s: name.two_s(), two_m: name.two_m(), tau: name.tau() }
    }

    pub fn s(&self) -> f64 {
        self.two_s as f64 / 2.0
    }

    pub fn m(&self) -> f64 {
        self.two_m as f64 / 2.0
    }
}

pub fn build_trio_basis<T: Scalar>() -> Vec<TrioBasisElement<T>> {
    TrioName::ALL.iter().map(|&n| TrioBasisElement::new(n)).collect()
}

/// One element `|c^k_{τ=j}⟩` of the charge eigenbasis: a product of two trio
/// states with the quantum numbers they induce.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargeBasisElement<T> {
    /// 1-based position within its sector table.
    pub index: usize,
    pub tau: u8,
    pub first: TrioName,
    pub second: TrioName,
    pub vector: Vec<Complex<T>>,
}

impl<T: Scalar> ChargeBasisElement<T> {
    fn new(tau: u8, index: usize, first: TrioName, second: TrioName) -> Self {
        let a = trio_vector::<T>(first);
        let b = trio_vector::<T>(second);
        let vector = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        Self { index, tau, first, second, vector }
    }

    pub fn name(&self) -> String {
        format!("c^{}_{{τ={}}}", self.index, self.tau)
    }

    /// Twice `(s₁₂₃, s₄₅₆)`.
    pub fn two_s(&self) -> (u8, u8) {
        (self.first.two_s(), self.second.two_s())
    }

    /// Twice `(m₁₂₃, m₄₅₆)`.
    pub fn two_m(&self) -> (i8, i8) {
        (self.first.two_m(), self.second.two_m())
    }

    /// `m₁…₆ = m₁₂₃ + m₄₅₆`.
    pub fn m_total(&self) -> f64 {
        (self.first.two_m() as f64 + self.second.two_m() as f64) / 2.0
    }

    /// `(τ₁₂₃, τ₄₅₆)`.
    pub fn trio_taus(&self) -> (u8, u8) {
        (self.first.tau(), self.second.tau())
    }
}

/// The decompositions of each sector table, in table order.
fn sector_rows(tau: u8) -> Vec<(TrioName, TrioName)> {
    use TrioName::*;
    let quartet_with = |others: &[TrioName]| -> Vec<(TrioName, TrioName)> {
        TrioName::QUARTET.iter().flat_map(|&q| others.iter().map(move |&o| (q, o))).collect()
    };
    let with_quartet = |t: TrioName| -> Vec<(TrioName, TrioName)> { TrioName::QUARTET.iter().map(|&q| (t, q)).collect() };
    match tau {
        0 => {
            let mut rows = quartet_with(&TrioName::QUARTET);
            rows.extend([
                (Omega, Omega2),
                (Omega, Omega2Bar),
                (Omega2, Omega),
                (Omega2, OmegaBar),
                (OmegaBar, Omega2),
                (OmegaBar, Omega2Bar),
                (Omega2Bar, Omega),
                (Omega2Bar, OmegaBar),
            ]);
            rows
        }
        1 => {
            let mut rows = quartet_with(&[Omega, OmegaBar]);
            rows.extend(with_quartet(Omega));
            rows.extend([(Omega2, Omega2), (Omega2, Omega2Bar)]);
            rows.extend(with_quartet(OmegaBar));
            rows.extend([(Omega2Bar, Omega2), (Omega2Bar, Omega2Bar)]);
            rows
        }
        _ => {
            let mut rows = quartet_with(&[Omega2, Omega2Bar]);
            rows.extend([(Omega, Omega), (Omega, OmegaBar)]);
            rows.extend(with_quartet(Omega2));
            rows.extend([(OmegaBar, Omega), (OmegaBar, OmegaBar)]);
            rows.extend(with_quartet(Omega2Bar));
            rows
        }
    }
}

/// All 64 charge basis elements, grouped by sector `τ = 0, 1, 2`.
pub fn build_charge_basis<T: Scalar>() -> Vec<ChargeBasisElement<T>> {
    (0..3u8)
        .flat_map(|tau| {
            sector_rows(tau)
                .into_iter()
                .enumerate()
                .map(move |(i, (a, b))| ChargeBasisElement::new(tau, i + 1, a, b))
        })
        .collect()
}

/// `|c^k_{τ}⟩` with 1-based `k`.
pub fn charge_element<T: Scalar>(tau: u8, k: usize) -> Option<ChargeBasisElement<T>> {
    let rows = sector_rows(tau % 3);
    let &(a, b) = rows.get(k.checked_sub(1)?)?;
    Some(ChargeBasisElement::new(tau % 3, k, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sector_sizes() {
        let sizes: Vec<usize> = (0..3).map(|t| sector_rows(t).len()).collect();
        assert_eq!(sizes, vec![24, 20, 20]);
    }

    #[test]
    fn trio_taus_add_up_to_sector() {
        for e in build_charge_basis::<f64>() {
            let (a, b) = e.trio_taus();
            assert_eq!((a + b) % 3, e.tau, "{}", e.name());
        }
    }

    #[test]
    fn first_table_row() {
        let c = charge_element::<f64>(0, 1).unwrap();
        assert_eq!((c.first, c.second), (TrioName::Up, TrioName::Up));
        assert_eq!(c.m_total(), 3.0);
        assert_eq!(c.vector[0], c_one());
    }
}
