//! CSV renderings of the trio and charge basis tables.

use crate::scalar::omega_pow;
use crate::spin::basis::{build_charge_basis, build_trio_basis, trio_vector, TrioName};

fn half(two: i64) -> String {
    if two % 2 == 0 {
        (two / 2).to_string()
    } else {
        format!("{two}/2")
    }
}

/// `ω^τ` as it appears in the tables' cycle column.
fn cycle_symbol(tau: u8) -> &'static str {
    match tau {
        0 => "1",
        1 => "ω",
        _ => "ω²",
    }
}

fn coefficient(z: num_complex::Complex<f64>) -> String {
    for k in 0..3 {
        if (z - omega_pow::<f64>(k)).norm() < 1e-9 {
            return match k {
                0 => String::new(),
                1 => "ω".into(),
                _ => "ω²".into(),
            };
        }
    }
    format!("({:.6}{:+.6}i)", z.re, z.im)
}

/// Decomposition of a trio state into computational kets, e.g.
/// `(|100⟩ + ω²|010⟩ + ω|001⟩)/√3`.
pub fn trio_decomposition(name: TrioName) -> String {
    let v = trio_vector::<f64>(name);
    let terms: Vec<(usize, num_complex::Complex<f64>)> =
        v.iter().enumerate().filter(|(_, z)| z.norm() > 1e-12).map(|(i, z)| (i, *z)).collect();
    if terms.len() == 1 {
        return format!("|{:03b}⟩", terms[0].0);
    }
    let scale = terms[0].1.norm();
    // List kets with a single excitation (or hole) in table order: the flipped
    // spin moves from the first slot to the last.
    let mut ordered = terms.clone();
    ordered.sort_by_key(|(i, _)| std::cmp::Reverse(if i.count_ones() == 1 { *i } else { 7 - *i }));
    let body: Vec<String> =
        ordered.iter().map(|(i, z)| format!("{}|{:03b}⟩", coefficient(z.unscale(scale)), i)).collect();
    format!("({})/√{}", body.join(" + "), terms.len())
}

/// Trio table: `State, Decomposition, S123, m123, τ`.
pub fn trio_table_csv() -> String {
    let mut out = String::from("State,Decomposition,S123,m123,τ\n");
    for e in build_trio_basis::<f64>() {
        out.push_str(&format!(
            "|{}⟩,{},{},{},{}\n",
            e.name,
            trio_decomposition(e.name),
            half(e.two_s as i64),
            half(e.two_m as i64),
            e.tau
        ));
    }
    out
}

/// Charge table for one sector: `State, s123⊗s456, m123, m456, m1...6,
/// τ123⊗τ456, Decomposition`.
pub fn charge_table_csv(tau: u8) -> String {
    let mut out = String::from("State,s123⊗s456,m123,m456,m1...6,τ123⊗τ456,Decomposition\n");
    for e in build_charge_basis::<f64>().into_iter().filter(|e| e.tau == tau % 3) {
        let (s1, s2) = e.two_s();
        let (m1, m2) = e.two_m();
        let (t1, t2) = e.trio_taus();
        out.push_str(&format!(
            "|{}⟩,{}⊗{},{},{},{},{}⊗{},|{}⟩|{}⟩\n",
            e.name(),
            half(s1 as i64),
            half(s2 as i64),
            half(m1 as i64),
            half(m2 as i64),
            half(m1 as i64 + m2 as i64),
            cycle_symbol(t1),
            cycle_symbol(t2),
            e.first,
            e.second
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_decomposition_matches_table() {
        assert_eq!(trio_decomposition(TrioName::Omega), "(|100⟩ + ω²|010⟩ + ω|001⟩)/√3");
        assert_eq!(trio_decomposition(TrioName::Omega2Bar), "(|011⟩ + ω|101⟩ + ω²|110⟩)/√3");
        assert_eq!(trio_decomposition(TrioName::Up), "|000⟩");
    }

    #[test]
    fn charge_rows() {
        let t0 = charge_table_csv(0);
        assert_eq!(t0.lines().count(), 25);
        assert!(t0.lines().nth(1).unwrap().starts_with("|c^1_{τ=0}⟩,3/2⊗3/2,3/2,3/2,3,1⊗1,|000⟩|000⟩"));
        assert_eq!(charge_table_csv(2).lines().count(), 21);
    }
}
