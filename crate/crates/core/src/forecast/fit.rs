use serde::{Deserialize, Serialize};

use super::DataPoint;
use crate::{Error, Result};

/// `value(t) = anchor_value * exp(rate * (t - anchor_year))`.
///
/// Fitted by ordinary least squares on `ln(value)` against year; the anchor
/// sits at the mean year of the data, where the fit is best conditioned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentialFit {
    pub anchor_year: f64,
    pub anchor_value: f64,
    /// Continuous growth rate per year.
    pub rate: f64,
}

impl ExponentialFit {
    pub fn value_at(&self, year: f64) -> f64 {
        self.anchor_value * (self.rate * (year - self.anchor_year)).exp()
    }

    /// `d value / d year` at `year`.
    pub fn slope_at(&self, year: f64) -> f64 {
        self.rate * self.value_at(year)
    }

    /// Years per doubling (negative for a decaying series).
    pub fn doubling_time(&self) -> f64 {
        std::f64::consts::LN_2 / self.rate
    }
}

pub fn fit_exponential(points: &[DataPoint]) -> Result<ExponentialFit> {
    if points.len() < 2
        || points
            .iter()
            .any(|p| !(p.value > 0.0) || !p.value.is_finite())
    {
        return Err(Error::Fit);
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.year).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.value.ln()).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.year - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit);
    }
    let sxy: f64 = points
        .iter()
        .map(|p| (p.year - mean_x) * (p.value.ln() - mean_y))
        .sum();
    Ok(ExponentialFit {
        anchor_year: mean_x,
        anchor_value: mean_y.exp(),
        rate: sxy / sxx,
    })
}
