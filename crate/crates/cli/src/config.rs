//! Optional TOML run configuration. Command-line flags override it.
//!
//! ```toml
//! format = "json"                   # json | csv | table
//! seed = 7                          # Monte-Carlo seed
//! scenario = "both"                 # optimistic | pessimistic | both
//! distance_mode = "real"            # real | integer
//! qubit_formula = "quadratic"       # linear | quadratic
//! hash_rate_form = "first-principles"  # first-principles | closed-form
//! overhead_on_qubits = true
//! break_requires_qubits = true
//!
//! [data]                            # year,value CSV files, relative to this file
//! qubits = "qubits.csv"             # physical qubit counts
//! gate_times = "gate_times.csv"     # two-qubit gate times, seconds
//! fidelities = "fidelities.csv"     # gate fidelities
//! network_history = "rate.csv"      # network hash rate, hashes/second
//! network_fit_start = 2016.0
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use qthreat_core::forecast::{parse_series, DataPoint, DataTables};

use crate::output::Format;

pub const CONFIG_ENV: &str = "QTHREAT_CONFIG";

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub scenario: Option<String>,
    pub distance_mode: Option<String>,
    pub qubit_formula: Option<String>,
    pub hash_rate_form: Option<String>,
    pub overhead_on_qubits: Option<bool>,
    pub break_requires_qubits: Option<bool>,
    #[serde(default)]
    pub data: DataOverrides,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataOverrides {
    pub qubits: Option<PathBuf>,
    pub gate_times: Option<PathBuf>,
    pub fidelities: Option<PathBuf>,
    pub network_history: Option<PathBuf>,
    pub network_fit_start: Option<f64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut cfg: Self =
            toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    /// Explicit path, else the environment variable, else defaults.
    pub fn discover(explicit: Option<&Path>) -> Result<Self, String> {
        match explicit {
            Some(p) => Self::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
                _ => Ok(Self::default()),
            },
        }
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }
}

/// Loads a `year,value` CSV and maps its values.
pub fn read_series(path: &Path, map: impl Fn(f64) -> f64) -> Result<Vec<DataPoint>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let pts = parse_series(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(pts
        .into_iter()
        .map(|p| DataPoint {
            year: p.year,
            value: map(p.value),
        })
        .collect())
}

/// Default tables with each configured file swapped in.
pub struct TablePaths<'a> {
    pub qubits: Option<&'a Path>,
    pub gate_times: Option<&'a Path>,
    pub fidelities: Option<&'a Path>,
    pub network_history: Option<&'a Path>,
    pub network_fit_start: Option<f64>,
}

pub fn load_tables(paths: &TablePaths<'_>) -> Result<DataTables, String> {
    let mut t = DataTables::default();
    if let Some(p) = paths.qubits {
        t.qubits = read_series(p, |v| v)?;
    }
    if let Some(p) = paths.gate_times {
        t.gate_speeds = read_series(p, |v| 1.0 / v)?;
    }
    if let Some(p) = paths.fidelities {
        t.infidelities = read_series(p, |v| 1.0 - v)?;
    }
    if let Some(p) = paths.network_history {
        t.network_history = read_series(p, |v| v)?;
    }
    if let Some(y) = paths.network_fit_start {
        t.network_fit_start = y;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let text = include_str!("config.rs")
            .lines()
            .skip_while(|l| !l.starts_with("//! ```toml"))
            .skip(1)
            .take_while(|l| !l.starts_with("//! ```"))
            .map(|l| l.trim_start_matches("//!").trim_start_matches(' '))
            .collect::<Vec<_>>()
            .join("\n");
        let cfg: RunConfig = toml::from_str(&text).unwrap();
        assert_eq!(cfg.format, Some(Format::Json));
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.data.network_fit_start, Some(2016.0));
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(toml::from_str::<RunConfig>("colour = 1").is_err());
    }
}
