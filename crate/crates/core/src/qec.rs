//! Surface-code resource overheads.
//!
//! Two calculators compose into an [`OverheadResult`]:
//!
//! * a magic-state factory planner that stacks distillation layers until the
//!   per-T-gate error budget `1/n_T` is met, and
//! * a single-layer code distance for the Clifford part of the circuit.
//!
//! Code distances are either solved as real numbers (the default, which
//! reproduces fractional cycle counts such as `c_tau = 538.6`) or rounded up
//! to integers for conservative engineering estimates.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Upper bound on the number of distillation layers. The tolerance update
/// converges well before this for every admissible error rate.
const MAX_LAYERS: usize = 64;

/// Absolute tolerance on real-valued code distances.
const DISTANCE_TOL: f64 = 1e-9;

/// Physical error model of the hardware.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalGateModel {
    p_g: f64,
}

impl PhysicalGateModel {
    pub fn new(p_g: f64) -> Result<Self> {
        if p_g.is_finite() && p_g > 0.0 && p_g < 0.01 {
            Ok(Self { p_g })
        } else {
            Err(Error::GateErrorRate(p_g))
        }
    }

    pub fn error_rate(&self) -> f64 {
        self.p_g
    }
}

/// Logical resource counts of an attack circuit.
///
/// Gate counts are stored as `f64` because realistic instances run to 1e17
/// and beyond, and every consumer works in floating point anyway.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogicalCircuitProfile {
    pub t_count: f64,
    pub clifford_count: f64,
    pub logical_qubits: u64,
}

impl LogicalCircuitProfile {
    pub fn new(t_count: f64, clifford_count: f64, logical_qubits: u64) -> Result<Self> {
        if !(t_count.is_finite() && t_count >= 1.0) {
            return Err(Error::Profile(format!("T count {t_count} < 1")));
        }
        if !(clifford_count.is_finite() && clifford_count >= 1.0) {
            return Err(Error::Profile(format!(
                "Clifford count {clifford_count} < 1"
            )));
        }
        if logical_qubits < 1 {
            return Err(Error::Profile("no logical qubits".into()));
        }
        Ok(Self {
            t_count,
            clifford_count,
            logical_qubits,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMode {
    /// Solve the distance condition with equality over the reals.
    #[default]
    RealValued,
    /// Smallest integer distance satisfying the condition.
    IntegerCeiling,
}

/// How circuit qubits scale with the circuit code distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QubitFormula {
    /// `3.125 * n_L * d_C`
    Linear,
    /// `3.125 * n_L * d_C^2`, the usual surface-code patch scaling.
    #[default]
    Quadratic,
}

impl std::str::FromStr for DistanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" | "real-valued" => Ok(Self::RealValued),
            "integer" | "integer-ceiling" => Ok(Self::IntegerCeiling),
            _ => Err(Error::Unknown {
                kind: "distance mode",
                value: s.to_owned(),
            }),
        }
    }
}

impl std::str::FromStr for QubitFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Self::Linear),
            "quadratic" => Ok(Self::Quadratic),
            _ => Err(Error::Unknown {
                kind: "qubit formula",
                value: s.to_owned(),
            }),
        }
    }
}

/// Per-layer code distances of a distillation factory, outermost layer first.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DistillationSchedule {
    pub distances: Vec<f64>,
}

impl DistillationSchedule {
    pub fn layers(&self) -> usize {
        self.distances.len()
    }

    pub fn last_distance(&self) -> Option<f64> {
        self.distances.last().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactoryPlan {
    pub schedule: DistillationSchedule,
    /// Clock cycles per logical T gate.
    pub c_tau: f64,
    /// Total clock cycles, counting T gates only.
    pub tau: f64,
    /// Physical qubits of the factory.
    pub q_factory: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverheadResult {
    pub schedule: DistillationSchedule,
    pub c_tau: f64,
    pub tau: f64,
    pub q_factory: f64,
    pub d_c: f64,
    pub q_circuit: f64,
    pub n_q: f64,
    pub c_nq: f64,
}

/// Logical error bound per cycle for a distillation layer of distance `d`:
/// `192 d (100 p_g)^((d+1)/2)`. Not clamped to 1.
pub fn logical_error_per_cycle(d: f64, p_g: f64) -> f64 {
    ln_factory_bound(d, p_g).exp()
}

fn ln_factory_bound(d: f64, p_g: f64) -> f64 {
    (192.0 * d).ln() + 0.5 * (d + 1.0) * (100.0 * p_g).ln()
}

fn ln_circuit_bound(d: f64, p_g: f64) -> f64 {
    0.5 * (d + 1.0) * (80.0 * p_g).ln()
}

/// Smallest distance `d >= 1` with `ln_bound(d) <= ln_target`.
///
/// `ln_bound` must be unimodal on `[1, inf)`: possibly rising up to
/// `peak`, then strictly decreasing without bound.
fn smallest_distance(
    ln_bound: impl Fn(f64) -> f64,
    ln_target: f64,
    peak: f64,
    mode: DistanceMode,
) -> f64 {
    if ln_bound(1.0) <= ln_target {
        return 1.0;
    }
    // Everything in [1, peak] lies above the bound at 1, hence above target.
    let mut lo = peak.max(1.0);
    let mut hi = lo.max(2.0);
    while ln_bound(hi) > ln_target {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > DISTANCE_TOL {
        let mid = 0.5 * (lo + hi);
        if ln_bound(mid) <= ln_target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    match mode {
        DistanceMode::RealValued => hi,
        DistanceMode::IntegerCeiling => {
            let mut d = lo.floor().max(1.0);
            while ln_bound(d) > ln_target {
                d += 1.0;
            }
            d
        }
    }
}

/// Plans the magic-state distillation factory for `t_count` T gates.
pub fn plan_distillation(
    model: PhysicalGateModel,
    t_count: f64,
    mode: DistanceMode,
) -> Result<FactoryPlan> {
    if !(t_count.is_finite() && t_count >= 1.0) {
        return Err(Error::Profile(format!("T count {t_count} < 1")));
    }
    let p_g = model.error_rate();
    // ln(192 d) + (d+1)/2 ln(100 p) peaks where 1/d = -ln(100 p)/2.
    let peak = -2.0 / (100.0 * p_g).ln();

    let mut p_tol = 1.0 / t_count;
    let mut distances = Vec::new();
    while p_tol < 10.0 * p_g {
        if distances.len() == MAX_LAYERS {
            return Err(Error::GateErrorRate(p_g));
        }
        let d = smallest_distance(|d| ln_factory_bound(d, p_g), (p_tol / 2.0).ln(), peak, mode);
        distances.push(d);
        p_tol = (p_tol / 70.0).cbrt();
    }

    let schedule = DistillationSchedule { distances };
    let c_tau = 10.0 * schedule.distances.iter().sum::<f64>();
    let q_factory = match schedule.last_distance() {
        Some(d_last) => 50.0 * d_last * d_last * 15f64.powi(schedule.layers() as i32 - 1),
        None => 0.0,
    };
    Ok(FactoryPlan {
        schedule,
        c_tau,
        tau: t_count * c_tau,
        q_factory,
    })
}

/// Code distance protecting `clifford_count` Clifford gates in one layer.
pub fn circuit_code_distance(
    model: PhysicalGateModel,
    clifford_count: f64,
    mode: DistanceMode,
) -> Result<f64> {
    if !(clifford_count.is_finite() && clifford_count >= 1.0) {
        return Err(Error::Profile(format!(
            "Clifford count {clifford_count} < 1"
        )));
    }
    let p_g = model.error_rate();
    Ok(smallest_distance(
        |d| ln_circuit_bound(d, p_g),
        -clifford_count.ln(),
        1.0,
        mode,
    ))
}

/// Full time/space overheads of a logical circuit.
pub fn overheads(
    model: PhysicalGateModel,
    profile: &LogicalCircuitProfile,
    mode: DistanceMode,
    formula: QubitFormula,
) -> Result<OverheadResult> {
    let factory = plan_distillation(model, profile.t_count, mode)?;
    let d_c = circuit_code_distance(model, profile.clifford_count, mode)?;
    let n_l = profile.logical_qubits as f64;
    let q_circuit = match formula {
        QubitFormula::Linear => 3.125 * n_l * d_c,
        QubitFormula::Quadratic => 3.125 * n_l * d_c * d_c,
    };
    let n_q = factory.q_factory + q_circuit;
    Ok(OverheadResult {
        schedule: factory.schedule,
        c_tau: factory.c_tau,
        tau: factory.tau,
        q_factory: factory.q_factory,
        d_c,
        q_circuit,
        n_q,
        c_nq: n_q / n_l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn model(p: f64) -> PhysicalGateModel {
        PhysicalGateModel::new(p).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn bound_examples() {
        assert!(rel(logical_error_per_cycle(9.0, 5e-4), 5.4e-4) < 1e-12);
        assert!(rel(logical_error_per_cycle(1.0, 1e-2), 192.0) < 1e-12);
        assert!(rel(logical_error_per_cycle(31.0, 5e-4), 9.08203125e-18) < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(PhysicalGateModel::new(0.01).is_err());
        assert!(PhysicalGateModel::new(0.0).is_err());
        assert!(PhysicalGateModel::new(f64::NAN).is_err());
        assert!(plan_distillation(model(5e-4), 0.5, DistanceMode::RealValued).is_err());
        assert!(circuit_code_distance(model(5e-4), 0.0, DistanceMode::RealValued).is_err());
        assert!(LogicalCircuitProfile::new(10.0, 10.0, 0).is_err());
    }

    #[test]
    fn zero_layer_schedule() {
        let plan = plan_distillation(model(1e-9), 100.0, DistanceMode::RealValued).unwrap();
        assert_eq!(plan.schedule.layers(), 0);
        assert_eq!(plan.c_tau, 0.0);
        assert_eq!(plan.tau, 0.0);
        assert_eq!(plan.q_factory, 0.0);
    }

    #[test]
    fn degenerate_circuit_distance_clamps_at_one() {
        let d = circuit_code_distance(model(5e-4), 1.0, DistanceMode::RealValued).unwrap();
        assert_eq!(d, 1.0);
    }

    #[test]
    fn circuit_distance_matches_log_solution() {
        // (0.04)^((d+1)/2) = 1/n_C  =>  d = 2 ln(n_C) / -ln(0.04) - 1
        for (n_c, expect) in [(2.56e12, 16.75), (1.425e18, 24.97)] {
            let oracle = 2.0 * f64::ln(n_c) / -f64::ln(0.04) - 1.0;
            let d = circuit_code_distance(model(5e-4), n_c, DistanceMode::RealValued).unwrap();
            assert!((d - oracle).abs() < 1e-8, "{d} vs {oracle}");
            assert!((d - expect).abs() < 0.01);
            let di = circuit_code_distance(model(5e-4), n_c, DistanceMode::IntegerCeiling).unwrap();
            assert_eq!(di, oracle.ceil());
        }
    }

    #[test]
    fn steep_error_rates_still_find_the_decreasing_branch() {
        // At p_g close to 1% the factory bound rises until d ~ 199 before
        // falling; the solver must skip the rising branch.
        let p = 0.0099;
        let plan = plan_distillation(model(p), 1e6, DistanceMode::RealValued).unwrap();
        for (i, d) in plan.schedule.distances.iter().enumerate() {
            let tol_ln = ln_factory_bound(*d, p);
            assert!(tol_ln.is_finite());
            assert!(*d > -2.0 / (100.0 * p).ln(), "layer {i} distance {d}");
        }
    }

    proptest! {
        #[test]
        fn schedule_terminates_and_decreases(p in 1e-7f64..0.0099, log_nt in 0.0f64..40.0) {
            let n_t = 10f64.powf(log_nt);
            let plan = plan_distillation(model(p), n_t, DistanceMode::RealValued).unwrap();
            prop_assert!(plan.schedule.layers() <= 10);
            for w in plan.schedule.distances.windows(2) {
                prop_assert!(w[0] > w[1]);
            }
        }

        #[test]
        fn c_tau_monotone_in_t_count(p in 1e-6f64..0.009, a in 0.0f64..30.0, b in 0.0f64..30.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            for mode in [DistanceMode::RealValued, DistanceMode::IntegerCeiling] {
                let c_lo = plan_distillation(model(p), 10f64.powf(lo), mode).unwrap().c_tau;
                let c_hi = plan_distillation(model(p), 10f64.powf(hi), mode).unwrap().c_tau;
                prop_assert!(c_lo <= c_hi + 1e-6, "{c_lo} > {c_hi}");
            }
        }

        #[test]
        fn circuit_distance_monotone(p in 1e-6f64..0.009, a in 0.0f64..30.0, b in 0.0f64..30.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let d_lo = circuit_code_distance(model(p), 10f64.powf(lo), DistanceMode::RealValued).unwrap();
            let d_hi = circuit_code_distance(model(p), 10f64.powf(hi), DistanceMode::RealValued).unwrap();
            prop_assert!(d_lo <= d_hi + 1e-9);
        }

        #[test]
        fn integer_mode_dominates_real(p in 1e-6f64..0.009, log_nt in 0.0f64..30.0) {
            let n_t = 10f64.powf(log_nt);
            let real = plan_distillation(model(p), n_t, DistanceMode::RealValued).unwrap();
            let int = plan_distillation(model(p), n_t, DistanceMode::IntegerCeiling).unwrap();
            prop_assert_eq!(real.schedule.layers(), int.schedule.layers());
            for (r, i) in real.schedule.distances.iter().zip(&int.schedule.distances) {
                prop_assert!(i + 1e-9 >= *r);
                prop_assert_eq!(i.fract(), 0.0);
            }
            prop_assert!(int.c_tau + 1e-9 >= real.c_tau);
        }

        #[test]
        fn composition_identities(p in 1e-6f64..0.009, log_nt in 0.0f64..20.0, n_l in 1u64..5000) {
            let n_t = 10f64.powf(log_nt);
            let profile = LogicalCircuitProfile::new(n_t, 20.0 * n_t, n_l).unwrap();
            for formula in [QubitFormula::Linear, QubitFormula::Quadratic] {
                let r = overheads(model(p), &profile, DistanceMode::RealValued, formula).unwrap();
                prop_assert_eq!(r.n_q, r.q_factory + r.q_circuit);
                prop_assert_eq!(r.tau, n_t * r.c_tau);
                prop_assert_eq!(r.c_nq, r.n_q / n_l as f64);
            }
        }
    }
}
