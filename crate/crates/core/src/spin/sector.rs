//! Sector operations on states, evaluated through permutation gathers.

use num_complex::Complex;

use crate::error::Result;
use crate::qstate::factored::{self, SectorMap};
use crate::qstate::QState;
use crate::scalar::Scalar;
use crate::spin::cycle_for;
use crate::Label;

/// `C` (or the trio cycle for three labels) applied to a register.
pub fn apply_c<T: Scalar>(s: &QState<T>, register: &[Label]) -> Result<QState<T>> {
    s.permute_qubits(register, cycle_for(register.len())?)
}

/// Weights `Tr(Π_{τ=j} ρ)` for `j = 0, 1, 2`.
pub fn sector_weights<T: Scalar>(s: &QState<T>, register: &[Label]) -> Result<[T; 3]> {
    let cycle = cycle_for(register.len())?;
    let positions = s.positions(register)?;
    let mut w = [T::zero(); 3];
    for (tau, slot) in w.iter_mut().enumerate() {
        let map = SectorMap { positions: positions.clone(), cycle, tau: tau as u8 };
        *slot = factored::weight(s, &map).re;
    }
    Ok(w)
}

/// Projects onto sector `τ`, returning the weight and the renormalized state.
pub fn project_sector<T: Scalar>(s: &QState<T>, register: &[Label], tau: u8) -> Result<(T, QState<T>)> {
    let map = SectorMap { positions: s.positions(register)?, cycle: cycle_for(register.len())?, tau: tau % 3 };
    let weight: Complex<T> = factored::weight(s, &map);
    let post = s.renormalized_like(factored::sandwich(s, &map))?;
    Ok((weight.re, post))
}
