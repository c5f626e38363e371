use serde::{Deserialize, Serialize};

use super::fit::{fit_exponential, ExponentialFit};
use super::{DataTables, Scenario};
use crate::{Error, Result};

/// Year from which algorithmic overhead reductions are counted, and the
/// earliest year the hardware timeline is evaluated at.
pub const BASE_YEAR: f64 = 2017.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardwareSample {
    pub year: f64,
    pub qubits: f64,
    /// Gates per second.
    pub gate_speed: f64,
    pub infidelity: f64,
    /// Multiplier applied to time and qubit overheads.
    pub overhead_factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardwareModel {
    pub qubit_fit: ExponentialFit,
    pub speed_fit: ExponentialFit,
    pub infidelity_fit: ExponentialFit,
    /// `(year, qubits)` the scenario doubling is measured from.
    pub qubit_anchor: (f64, f64),
    /// `(year, infidelity)` the yearly halving is measured from.
    pub infidelity_anchor: (f64, f64),
}

fn last_year(points: &[super::DataPoint]) -> f64 {
    points
        .iter()
        .map(|p| p.year)
        .fold(f64::NEG_INFINITY, f64::max)
}

impl HardwareModel {
    pub fn new(tables: &DataTables) -> Result<Self> {
        let qubit_fit = fit_exponential(&tables.qubits)?;
        let speed_fit = fit_exponential(&tables.gate_speeds)?;
        let infidelity_fit = fit_exponential(&tables.infidelities)?;
        let tq = last_year(&tables.qubits);
        let ti = last_year(&tables.infidelities);
        Ok(Self {
            qubit_anchor: (tq, qubit_fit.value_at(tq)),
            infidelity_anchor: (ti, infidelity_fit.value_at(ti)),
            qubit_fit,
            speed_fit,
            infidelity_fit,
        })
    }

    pub fn sample(&self, year: f64, scenario: &Scenario) -> Result<HardwareSample> {
        if !(year >= BASE_YEAR) || !year.is_finite() {
            return Err(Error::Year {
                year,
                reason: format!("hardware timeline starts at {BASE_YEAR}"),
            });
        }
        let (tq, q0) = self.qubit_anchor;
        let (ti, e0) = self.infidelity_anchor;
        // Up to the anchor both scenarios share the fitted history.
        let qubits = if year <= tq {
            self.qubit_fit.value_at(year)
        } else {
            q0 * ((year - tq) * 12.0 / scenario.qubit_doubling_months).exp2()
        };
        Ok(HardwareSample {
            year,
            qubits,
            gate_speed: self.speed_fit.value_at(year).min(scenario.speed_cap_hz),
            infidelity: (e0 * (ti - year).exp2()).max(scenario.infidelity_floor),
            overhead_factor: scenario.beta.powf(year - BASE_YEAR),
        })
    }
}
