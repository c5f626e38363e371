//! Momentum running-time models, in units of hash evaluations with unit-cost
//! table operations.

use serde::Serialize;

use super::momentum::MomentumParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostModelReport {
    /// `|S|`
    pub subset_size: f64,
    /// Headers to try: `max(1, 2^(n+ell) / (t |S|^2))`.
    pub m: f64,
    /// `m |S|`
    pub classical_time: f64,
    /// `sqrt(2^(n+ell) / t)`, the subset size making `m = 1`.
    pub optimal_subset: f64,
    /// `T = sqrt(2^(n+ell) / t)`
    pub optimal_time: f64,
    /// `2^(n+ell+1) / (t |S|)` when `|S|` is below the optimum.
    pub memory_limited_time: Option<f64>,
    /// `sqrt(m) |S|^(2/3)`
    pub quantum_lower_bound: f64,
    /// `T^(2/3)`, the quantum bound at the optimal subset size.
    pub quantum_optimal_bound: f64,
}

pub fn classical_cost_model(params: &MomentumParams) -> CostModelReport {
    let ratio = params.work_ratio();
    let s = params.subset_size() as f64;
    let m = headers_needed(ratio, s);
    let optimal = ratio.sqrt();
    CostModelReport {
        subset_size: s,
        m,
        classical_time: m * s,
        optimal_subset: optimal,
        optimal_time: optimal,
        memory_limited_time: (s < optimal).then(|| 2.0 * ratio / s),
        quantum_lower_bound: quantum_cost_model(params),
        quantum_optimal_bound: optimal.cbrt().powi(2),
    }
}

/// Lower bound `sqrt(m) |S|^(2/3)` on any quantum algorithm: Grover over
/// headers times the collision-finding bound per header.
pub fn quantum_cost_model(params: &MomentumParams) -> f64 {
    let s = params.subset_size() as f64;
    let m = headers_needed(params.work_ratio(), s);
    m.sqrt() * s.cbrt().powi(2)
}

fn headers_needed(ratio: f64, subset: f64) -> f64 {
    (ratio / (subset * subset)).max(1.0)
}
