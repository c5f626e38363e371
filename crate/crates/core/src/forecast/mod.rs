//! Extrapolation of network hash rate and quantum hardware, and the years at
//! which quantum attacks become practical.

pub mod data;
pub mod figures;
pub mod fit;
pub mod hardware;
pub mod network;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::attack::{
    estimate_mining, signature_crack_estimate, HashRateForm, MiningAttackParams,
    SignatureAttackParams, BLOCK_INTERVAL_SECS, REFERENCE_ASIC_RATE,
};
use crate::qec::{DistanceMode, PhysicalGateModel, QubitFormula};
use crate::{Error, Result};

pub use data::{parse_series, DataPoint, DataTables};
pub use figures::{FigureId, Series};
pub use fit::{fit_exponential, ExponentialFit};
pub use hardware::{HardwareModel, HardwareSample, BASE_YEAR};
pub use network::{NetworkModel, NetworkSample};

/// Key size of the signature scheme under attack.
pub const SIGNATURE_KEY_BITS: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioName {
    Optimistic,
    Pessimistic,
}

impl ScenarioName {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Optimistic => "optimistic",
            Self::Pessimistic => "pessimistic",
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "optimistic" => Ok(Self::Optimistic),
            "pessimistic" | "less-optimistic" => Ok(Self::Pessimistic),
            _ => Err(Error::Unknown {
                kind: "scenario",
                value: s.to_owned(),
            }),
        }
    }
}

/// Hardware growth assumptions. Only the two named variants can be built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scenario {
    pub name: ScenarioName,
    pub qubit_doubling_months: f64,
    pub speed_cap_hz: f64,
    pub infidelity_floor: f64,
    /// Yearly algorithmic overhead reduction.
    pub beta: f64,
}

impl Scenario {
    pub const fn optimistic() -> Self {
        Self {
            name: ScenarioName::Optimistic,
            qubit_doubling_months: 10.0,
            speed_cap_hz: 50e9,
            infidelity_floor: 5e-6,
            beta: 0.75,
        }
    }

    pub const fn pessimistic() -> Self {
        Self {
            name: ScenarioName::Pessimistic,
            qubit_doubling_months: 20.0,
            speed_cap_hz: 5e9,
            infidelity_floor: 5e-5,
            beta: 0.85,
        }
    }

    pub const fn named(name: ScenarioName) -> Self {
        match name {
            ScenarioName::Optimistic => Self::optimistic(),
            ScenarioName::Pessimistic => Self::pessimistic(),
        }
    }

    pub fn both() -> [Self; 2] {
        [Self::optimistic(), Self::pessimistic()]
    }
}

impl From<ScenarioName> for Scenario {
    fn from(name: ScenarioName) -> Self {
        Self::named(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct ForecastOptions {
    pub distance_mode: DistanceMode,
    pub qubit_formula: QubitFormula,
    pub hash_rate_form: HashRateForm,
    /// Scale qubit requirements by the overhead factor, not only time.
    pub overhead_on_qubits: bool,
    /// A signature break also needs enough qubits, not just a fast enough crack.
    pub break_requires_qubits: bool,
}

impl Default for ForecastOptions {
    fn default() -> Self {
        Self {
            distance_mode: DistanceMode::default(),
            qubit_formula: QubitFormula::default(),
            hash_rate_form: HashRateForm::default(),
            overhead_on_qubits: true,
            break_requires_qubits: true,
        }
    }
}

/// Attack costs against the hardware available in a given year.
///
/// Costs are infinite when the gate error rate is too high for the
/// distillation scheme to converge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Feasibility {
    pub year: f64,
    pub scenario: ScenarioName,
    pub hardware: HardwareSample,
    pub network: NetworkSample,
    /// Seconds to recover one signing key.
    pub crack_time: f64,
    pub signature_qubits_required: f64,
    pub mining_qubits_required: f64,
    pub qubits_available: f64,
    /// Single-machine effective hash rate at the year's difficulty.
    pub mining_h_qc: f64,
}

impl Feasibility {
    pub fn signature_qubits_sufficient(&self) -> bool {
        self.qubits_available >= self.signature_qubits_required
    }

    pub fn mining_qubits_sufficient(&self) -> bool {
        self.qubits_available >= self.mining_qubits_required
    }
}

/// Evenly spaced years, `start` and `end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YearGrid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Default for YearGrid {
    fn default() -> Self {
        Self {
            start: BASE_YEAR,
            end: 2060.0,
            step: 1.0,
        }
    }
}

impl YearGrid {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "year step {step} must be positive"
            )));
        }
        for year in [start, end] {
            if !(data::MIN_YEAR..=data::MAX_YEAR).contains(&year) {
                return Err(Error::Year {
                    year,
                    reason: format!("grid must lie in [{}, {}]", data::MIN_YEAR, data::MAX_YEAR),
                });
            }
        }
        if end < start {
            return Err(Error::InvalidParameter(format!(
                "grid end {end} before start {start}"
            )));
        }
        Ok(Self { start, end, step })
    }

    pub fn years(&self) -> impl Iterator<Item = f64> + '_ {
        let n = ((self.end - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(move |i| self.start + i as f64 * self.step)
    }
}

/// First grid years at which each milestone holds; `None` means beyond the horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossoverReport {
    pub scenario: ScenarioName,
    pub horizon: f64,
    pub qubit_sufficiency_year: Option<f64>,
    pub signature_break_year: Option<f64>,
    pub hash_dominance_year: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Forecaster {
    pub tables: DataTables,
    pub options: ForecastOptions,
    pub hardware: HardwareModel,
    pub network: NetworkModel,
}

impl Default for Forecaster {
    fn default() -> Self {
        Self::new(DataTables::default(), ForecastOptions::default())
            .expect("bundled data tables fit")
    }
}

impl Forecaster {
    pub fn new(tables: DataTables, options: ForecastOptions) -> Result<Self> {
        Ok(Self {
            hardware: HardwareModel::new(&tables)?,
            network: NetworkModel::new(&tables.network_history, tables.network_fit_start)?,
            tables,
            options,
        })
    }

    pub fn hardware_timeline(&self, year: f64, scenario: &Scenario) -> Result<HardwareSample> {
        self.hardware.sample(year, scenario)
    }

    pub fn network_timeline(&self, year: f64, scenario: ScenarioName) -> Result<NetworkSample> {
        self.network.sample(year, scenario)
    }

    pub fn attack_feasibility(&self, year: f64, scenario: &Scenario) -> Result<Feasibility> {
        let hw = self.hardware_timeline(year, scenario)?;
        let net = self.network_timeline(year, scenario.name)?;
        let o = self.options;
        let space = if o.overhead_on_qubits {
            hw.overhead_factor
        } else {
            1.0
        };
        let mut out = Feasibility {
            year,
            scenario: scenario.name,
            hardware: hw,
            network: net,
            crack_time: f64::INFINITY,
            signature_qubits_required: f64::INFINITY,
            mining_qubits_required: f64::INFINITY,
            qubits_available: hw.qubits,
            mining_h_qc: 0.0,
        };
        let gate = match PhysicalGateModel::new(hw.infidelity) {
            Ok(g) => g,
            Err(Error::GateErrorRate(_)) => return Ok(out),
            Err(e) => return Err(e),
        };

        let sig = signature_crack_estimate(
            &SignatureAttackParams::new(SIGNATURE_KEY_BITS, hw.gate_speed, gate)?,
            o.distance_mode,
            o.qubit_formula,
        )?;
        out.crack_time = sig.tau * hw.overhead_factor;
        out.signature_qubits_required = sig.n_q * space;

        let params = MiningAttackParams::new(net.difficulty.max(1.0), hw.gate_speed, gate, 1)?;
        let (oh, rate) =
            estimate_mining(&params, o.distance_mode, o.qubit_formula, o.hash_rate_form)?;
        out.mining_qubits_required = oh.n_q * space;
        out.mining_h_qc = rate.h_qc / hw.overhead_factor;
        Ok(out)
    }

    pub fn crossovers(&self, scenario: &Scenario, grid: &YearGrid) -> Result<CrossoverReport> {
        let mut report = CrossoverReport {
            scenario: scenario.name,
            horizon: grid.end,
            qubit_sufficiency_year: None,
            signature_break_year: None,
            hash_dominance_year: None,
        };
        for year in grid.years() {
            let f = self.attack_feasibility(year, scenario)?;
            let mining_ready = f.mining_qubits_sufficient();
            let fast = f.crack_time < BLOCK_INTERVAL_SECS;
            let sig_ready = !self.options.break_requires_qubits || f.signature_qubits_sufficient();
            let first = |slot: &mut Option<f64>, hit: bool| {
                if hit && slot.is_none() {
                    *slot = Some(year);
                }
            };
            first(&mut report.qubit_sufficiency_year, mining_ready);
            first(&mut report.signature_break_year, fast && sig_ready);
            first(
                &mut report.hash_dominance_year,
                mining_ready && f.mining_h_qc > REFERENCE_ASIC_RATE,
            );
            if report.qubit_sufficiency_year.is_some()
                && report.signature_break_year.is_some()
                && report.hash_dominance_year.is_some()
            {
                break;
            }
        }
        Ok(report)
    }
}
