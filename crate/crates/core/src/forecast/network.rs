use serde::{Deserialize, Serialize};

use super::fit::{fit_exponential, ExponentialFit};
use super::{DataPoint, ScenarioName};
use crate::attack::difficulty_from_network_rate;
use crate::{Error, Result};

/// Years of continued exponential growth before the optimistic curve turns linear.
pub const EXPONENTIAL_YEARS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkSample {
    pub year: f64,
    /// Hashes per second.
    pub rate: f64,
    pub difficulty: f64,
}

/// Network hash-rate extrapolation from a fitted exponential trend.
///
/// Before the last history point the fitted trend itself is returned. After
/// it, the optimistic curve follows the trend for [`EXPONENTIAL_YEARS`] and
/// then continues along its tangent; the pessimistic curve follows the
/// tangent at the last history point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkModel {
    pub fit: ExponentialFit,
    pub fit_start: f64,
    pub history_end: f64,
}

impl NetworkModel {
    pub fn new(history: &[DataPoint], fit_start: f64) -> Result<Self> {
        let window: Vec<DataPoint> = history
            .iter()
            .copied()
            .filter(|p| p.year >= fit_start)
            .collect();
        let fit = fit_exponential(&window)?;
        let history_end = window
            .iter()
            .map(|p| p.year)
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Self {
            fit,
            fit_start,
            history_end,
        })
    }

    pub fn splice_year(&self) -> f64 {
        self.history_end + EXPONENTIAL_YEARS
    }

    pub fn rate(&self, year: f64, scenario: ScenarioName) -> Result<f64> {
        if !(year >= self.fit_start) || !year.is_finite() {
            return Err(Error::Year {
                year,
                reason: format!("network trend starts at {}", self.fit_start),
            });
        }
        let knee = match scenario {
            ScenarioName::Optimistic => self.splice_year(),
            ScenarioName::Pessimistic => self.history_end,
        };
        if year <= knee {
            return Ok(self.fit.value_at(year));
        }
        Ok(self.fit.value_at(knee) + self.fit.slope_at(knee) * (year - knee))
    }

    pub fn sample(&self, year: f64, scenario: ScenarioName) -> Result<NetworkSample> {
        let rate = self.rate(year, scenario)?;
        Ok(NetworkSample {
            year,
            rate,
            difficulty: difficulty_from_network_rate(rate),
        })
    }
}
