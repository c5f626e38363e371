//! Tabular data behind the forecast and attack-cost plots.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use super::{Forecaster, Scenario, YearGrid, SIGNATURE_KEY_BITS};
use crate::attack::{
    estimate_mining, signature_crack_estimate, MiningAttackParams, SignatureAttackParams,
    BLOCK_INTERVAL_SECS, REFERENCE_ASIC_RATE,
};
use crate::qec::PhysicalGateModel;
use crate::{Error, Result};

/// Clock speed of the gate-error sweeps.
pub const SWEEP_CLOCK_HZ: f64 = 66.7e6;

/// Difficulties of the mining gate-error sweep.
pub const SWEEP_DIFFICULTIES: [f64; 5] = [1e8, 1e10, 1e12, 1e14, 1e16];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    /// Mining hash rate and qubits against gate error, per difficulty.
    Fig1,
    /// Quantum and network hash rates over time.
    Fig2,
    /// Signature crack time and qubits against gate error.
    Fig3,
    /// Signature crack time over time.
    Fig5,
    /// Network rate and difficulty extrapolation.
    AppB,
    /// Hardware trajectories.
    AppC,
}

impl FigureId {
    pub const ALL: [Self; 6] = [
        Self::Fig1,
        Self::Fig2,
        Self::Fig3,
        Self::Fig5,
        Self::AppB,
        Self::AppC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fig1 => "fig1",
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig5 => "fig5",
            Self::AppB => "appB",
            Self::AppC => "appC",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown {
                kind: "figure",
                value: s.to_owned(),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series {
    pub figure: FigureId,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Series {
    fn new(figure: FigureId, columns: Vec<String>) -> Self {
        Self {
            figure,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Header plus one line per row, shortest round-trip number formatting.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }
}

fn per_scenario(base: &[&str], scenarios: &[Scenario]) -> Vec<String> {
    let mut cols = vec!["year".to_owned()];
    for s in scenarios {
        cols.extend(base.iter().map(|b| format!("{b}_{}", s.name)));
    }
    cols
}

/// Gate error rates from 1e-5 to 5e-3, four per decade.
pub fn gate_error_sweep() -> Vec<f64> {
    (0..=11)
        .map(|i| 1e-5 * 10f64.powf(f64::from(i) / 4.0))
        .filter(|&p| p <= 5e-3 * (1.0 + 1e-12))
        .collect()
}

impl Forecaster {
    pub fn figure_series(
        &self,
        figure: FigureId,
        scenarios: &[Scenario],
        grid: &YearGrid,
    ) -> Result<Series> {
        let o = self.options;
        match figure {
            FigureId::Fig1 => {
                let cols = ["p_g", "difficulty", "c_tau", "c_nq", "h_qc", "n_q"];
                let mut s = Series::new(figure, cols.map(String::from).to_vec());
                for d in SWEEP_DIFFICULTIES {
                    for p in gate_error_sweep() {
                        let params = MiningAttackParams::new(
                            d,
                            SWEEP_CLOCK_HZ,
                            PhysicalGateModel::new(p)?,
                            1,
                        )?;
                        let (oh, rate) = estimate_mining(
                            &params,
                            o.distance_mode,
                            o.qubit_formula,
                            o.hash_rate_form,
                        )?;
                        s.rows
                            .push(vec![p, d, oh.c_tau, oh.c_nq, rate.h_qc, oh.n_q]);
                    }
                }
                Ok(s)
            }
            FigureId::Fig3 => {
                let cols = ["p_g", "crack_minutes", "c_tau", "c_nq", "n_q"];
                let mut s = Series::new(figure, cols.map(String::from).to_vec());
                for p in gate_error_sweep() {
                    let params = SignatureAttackParams::new(
                        SIGNATURE_KEY_BITS,
                        SWEEP_CLOCK_HZ,
                        PhysicalGateModel::new(p)?,
                    )?;
                    let e = signature_crack_estimate(&params, o.distance_mode, o.qubit_formula)?;
                    s.rows.push(vec![
                        p,
                        e.tau / 60.0,
                        e.overheads.c_tau,
                        e.overheads.c_nq,
                        e.n_q,
                    ]);
                }
                Ok(s)
            }
            FigureId::Fig2 | FigureId::Fig5 => {
                let (base, reference): (&[&str], _) = if figure == FigureId::Fig2 {
                    (
                        &[
                            "network_rate",
                            "h_qc",
                            "mining_qubits_required",
                            "qubits_available",
                        ],
                        ("asic_reference_rate", REFERENCE_ASIC_RATE),
                    )
                } else {
                    (
                        &[
                            "crack_time",
                            "signature_qubits_required",
                            "qubits_available",
                        ],
                        ("block_interval", BLOCK_INTERVAL_SECS),
                    )
                };
                let mut cols = per_scenario(base, scenarios);
                cols.push(reference.0.to_owned());
                let mut s = Series::new(figure, cols);
                for year in grid.years() {
                    let mut row = vec![year];
                    for sc in scenarios {
                        let f = self.attack_feasibility(year, sc)?;
                        if figure == FigureId::Fig2 {
                            row.extend([
                                f.network.rate,
                                f.mining_h_qc,
                                f.mining_qubits_required,
                                f.qubits_available,
                            ]);
                        } else {
                            row.extend([
                                f.crack_time,
                                f.signature_qubits_required,
                                f.qubits_available,
                            ]);
                        }
                    }
                    row.push(reference.1);
                    s.rows.push(row);
                }
                Ok(s)
            }
            FigureId::AppB => {
                let mut s = Series::new(figure, per_scenario(&["rate", "difficulty"], scenarios));
                for year in grid.years() {
                    let mut row = vec![year];
                    for sc in scenarios {
                        let n = self.network_timeline(year, sc.name)?;
                        row.extend([n.rate, n.difficulty]);
                    }
                    s.rows.push(row);
                }
                Ok(s)
            }
            FigureId::AppC => {
                let base = ["qubits", "gate_speed", "infidelity", "overhead_factor"];
                let mut s = Series::new(figure, per_scenario(&base, scenarios));
                for year in grid.years() {
                    let mut row = vec![year];
                    for sc in scenarios {
                        let h = self.hardware_timeline(year, sc)?;
                        row.extend([h.qubits, h.gate_speed, h.infidelity, h.overhead_factor]);
                    }
                    s.rows.push(row);
                }
                Ok(s)
            }
        }
    }
}
