//! Historical data tables behind the forecasts.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const MIN_YEAR: f64 = 2010.0;
pub const MAX_YEAR: f64 = 2100.0;

/// Table rows carry whole years; they are placed mid-year.
pub const MID_YEAR: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DataPoint {
    pub year: f64,
    pub value: f64,
}

impl DataPoint {
    pub fn new(year: f64, value: f64) -> Result<Self> {
        if !(MIN_YEAR..=MAX_YEAR).contains(&year) {
            return Err(Error::Year {
                year,
                reason: format!("data points must lie in [{MIN_YEAR}, {MAX_YEAR}]"),
            });
        }
        if !value.is_finite() {
            return Err(Error::Parse(format!("non-finite value at year {year}")));
        }
        Ok(Self { year, value })
    }
}

/// Physical qubit counts of superconducting devices.
pub const QUBIT_TABLE: [(u32, f64); 7] = [
    (2013, 2.0),
    (2014, 5.0),
    (2014, 3.0),
    (2016, 5.0),
    (2017, 16.0),
    (2017, 20.0),
    (2018, 49.0),
];

/// Two-qubit gate times, seconds.
pub const GATE_TIME_TABLE: [(u32, f64); 5] = [
    (2013, 420e-9),
    (2015, 433e-9),
    (2016, 160e-9),
    (2017, 42e-9),
    (2018, 25e-9),
];

/// Gate fidelities.
pub const FIDELITY_TABLE: [(u32, f64); 6] = [
    (2013, 0.9347),
    (2014, 0.96),
    (2015, 0.97),
    (2016, 0.99),
    (2017, 0.995),
    (2018, 0.997),
];

pub const DEFAULT_NETWORK_HISTORY: &str = include_str!("../../data/network_hashrate.csv");

/// Network history points from this year on define the "present" growth.
pub const DEFAULT_NETWORK_FIT_START: f64 = 2016.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataTables {
    /// Qubit counts.
    pub qubits: Vec<DataPoint>,
    /// Gate speeds in gates per second (inverse gate times).
    pub gate_speeds: Vec<DataPoint>,
    /// Gate infidelities `1 - fidelity`.
    pub infidelities: Vec<DataPoint>,
    /// Network hash rate, hashes per second.
    pub network_history: Vec<DataPoint>,
    pub network_fit_start: f64,
}

fn mid_year(table: &[(u32, f64)], f: impl Fn(f64) -> f64) -> Vec<DataPoint> {
    table
        .iter()
        .map(|&(y, v)| DataPoint {
            year: f64::from(y) + MID_YEAR,
            value: f(v),
        })
        .collect()
}

impl Default for DataTables {
    fn default() -> Self {
        Self {
            qubits: mid_year(&QUBIT_TABLE, |v| v),
            gate_speeds: mid_year(&GATE_TIME_TABLE, |t| 1.0 / t),
            infidelities: mid_year(&FIDELITY_TABLE, |f| 1.0 - f),
            network_history: parse_series(DEFAULT_NETWORK_HISTORY)
                .expect("bundled network history parses"),
            network_fit_start: DEFAULT_NETWORK_FIT_START,
        }
    }
}

/// Parses `year,value` lines. Blank lines, `#` comments and a non-numeric
/// header row are skipped.
pub fn parse_series(text: &str) -> Result<Vec<DataPoint>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (y, v) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("line {}: expected `year,value`", lineno + 1)))?;
        let (y, v) = (y.trim(), v.trim());
        match (y.parse::<f64>(), v.parse::<f64>()) {
            (Ok(year), Ok(value)) => out.push(DataPoint::new(year, value)?),
            _ if out.is_empty() && y.parse::<f64>().is_err() => continue,
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: cannot parse `{line}`",
                    lineno + 1
                )))
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let t = DataTables::default();
        assert_eq!(t.qubits.len(), 7);
        assert_eq!(t.qubits[0].year, 2013.5);
        let last_speed = t.gate_speeds.last().unwrap();
        assert_eq!(last_speed.year, 2018.5);
        assert!((last_speed.value - 4e7).abs() < 1e-3);
        let last_inf = t.infidelities.last().unwrap();
        assert!((last_inf.value - 0.003).abs() < 1e-12);
        assert_eq!(t.network_history.len(), 8);
    }

    #[test]
    fn series_parsing() {
        let pts = parse_series("year,value\n# c\n2015,1\n\n2016.5, 2e3\n").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(
            pts[1],
            DataPoint {
                year: 2016.5,
                value: 2e3
            }
        );
        assert!(parse_series("2015;1").is_err());
        assert!(parse_series("2015,1\n2016,x").is_err());
        assert!(parse_series("1990,1").is_err());
    }
}
