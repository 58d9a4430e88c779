//! Closed-form time-scale estimates: Stokes–Einstein diffusion and the
//! cyclotron-like rotation time of a nuclear spin in a weak field.

use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

/// Boltzmann constant, J/K (exact in SI).
pub const BOLTZMANN: f64 = 1.380649e-23;
/// Elementary charge, C (exact in SI).
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;
/// Proton mass, kg (CODATA 2022).
pub const PROTON_MASS: f64 = 1.67262192595e-27;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EstimateInputs {
    /// Magnetic field, T.
    #[serde(rename = "B")]
    pub b: f64,
    /// Diffusion length, m.
    pub l: f64,
    /// Viscosity, Pa·s.
    pub eta: f64,
    /// Hydrodynamic radius, m.
    pub r: f64,
    /// Temperature, K.
    #[serde(rename = "T")]
    pub t: f64,
}

impl Default for EstimateInputs {
    fn default() -> Self {
        EstimateInputs { b: 1e-8, l: 1e-7, eta: 1e-3, r: 1e-9, t: 1e2 }
    }
}

impl EstimateInputs {
    pub fn validate(&self) -> CliResult<()> {
        for (name, v) in [("B", self.b), ("l", self.l), ("eta", self.eta), ("r", self.r), ("T", self.t)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!("estimate input {name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Diffusion,
    Rotation,
}

/// One estimated quantity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub name: String,
    pub value: f64,
    pub unit: String,
    /// `10^round(log₁₀ value)`.
    pub order_of_magnitude: f64,
}

impl Estimate {
    fn new(name: &str, value: f64, unit: &str) -> Self {
        Estimate { name: name.into(), value, unit: unit.into(), order_of_magnitude: order_of_magnitude(value) }
    }
}

pub fn order_of_magnitude(x: f64) -> f64 {
    let exponent = x.log10().round() as i32;
    format!("1e{exponent}").parse().unwrap_or(f64::NAN)
}

/// `D = k_B T / (6π η r)`.
pub fn diffusion_constant(inputs: &EstimateInputs) -> f64 {
    BOLTZMANN * inputs.t / (6.0 * std::f64::consts::PI * inputs.eta * inputs.r)
}

/// `t = ℓ² / D`.
pub fn diffusion_time(inputs: &EstimateInputs) -> f64 {
    inputs.l * inputs.l / diffusion_constant(inputs)
}

/// `t = m_p / (e B)`.
pub fn rotation_time(inputs: &EstimateInputs) -> f64 {
    PROTON_MASS / (ELEMENTARY_CHARGE * inputs.b)
}

pub fn estimate(kind: EstimateKind, inputs: &EstimateInputs) -> CliResult<Vec<Estimate>> {
    inputs.validate()?;
    Ok(match kind {
        EstimateKind::Diffusion => vec![
            Estimate::new("D", diffusion_constant(inputs), "m^2/s"),
            Estimate::new("t_diff", diffusion_time(inputs), "s"),
        ],
        EstimateKind::Rotation => vec![Estimate::new("t_rot", rotation_time(inputs), "s")],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_inputs_give_the_quoted_scales() {
        let x = EstimateInputs::default();
        assert_eq!(order_of_magnitude(diffusion_constant(&x)), 1e-10);
        let t = diffusion_time(&x);
        assert!((t - 1.365268e-4).abs() < 1e-9, "{t}");
        assert_eq!(order_of_magnitude(t), 1e-4);
        let r = rotation_time(&x);
        assert!((r - 1.043968).abs() < 1e-6, "{r}");
        assert_eq!(order_of_magnitude(r), 1.0);
    }

    #[test]
    fn non_positive_inputs_are_rejected() {
        let x = EstimateInputs { r: 0.0, ..EstimateInputs::default() };
        assert!(matches!(estimate(EstimateKind::Diffusion, &x), Err(CliError::Usage(_))));
        let y = EstimateInputs { b: -1.0, ..EstimateInputs::default() };
        assert!(estimate(EstimateKind::Rotation, &y).is_err());
    }
}
