//! Grover mining and Shor signature attack estimates.
//!
//! Mining: a quantum miner runs Grover search over `10 N / t` candidate
//! headers. Each oracle call costs `297784` logical T-depth, multiplied by the
//! error-correction time overhead `c_tau`. Signatures: Shor's algorithm for the
//! elliptic-curve discrete log, costed by its Toffoli count.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::qec::{
    self, DistanceMode, LogicalCircuitProfile, OverheadResult, PhysicalGateModel, QubitFormula,
};
use crate::{Error, Result};

pub mod race;

pub use race::{race_success_probability, RaceEstimate, RaceMethod};

/// Logical T-depth of one Grover oracle call (two SHA-256 evaluations,
/// computed and uncomputed, plus inversion about the mean).
pub const T_DEPTH_PER_ORACLE: f64 = 297_784.0;

/// Clifford gates per T gate in the mining circuit.
pub const MINING_CLIFFORD_PER_T: f64 = 29.4;

/// Logical qubits of the Grover mining circuit, independent of difficulty.
pub const MINING_LOGICAL_QUBITS: u64 = 2402;

/// Clifford gates per T gate in the ECDLP circuit.
pub const SIGNATURE_CLIFFORD_PER_T: f64 = 20.0;

/// Logical ancillas used by the T-depth-one Toffoli construction.
pub const TOFFOLI_ANCILLAS: u64 = 4;

/// Expected parallel Grover speed-up constants for `d` independent machines.
pub const PARALLEL_TIME_FACTOR: f64 = 0.39;
pub const PARALLEL_RATE_FACTOR: f64 = 2.56;

/// Coefficient of the closed form `h_QC = 0.28 s sqrt(D) / c_tau`.
pub const CLOSED_FORM_HASH_RATE_COEFF: f64 = 0.28;

/// Coefficient of `h_QC = 0.04 s sqrt(D)` for a code with transversal
/// non-Clifford gates and no distillation delay.
pub const OPTIMISTIC_HASH_RATE_COEFF: f64 = 0.04;

/// Hash rate of one off-the-shelf ASIC miner (AntMiner S9), hashes/second.
pub const REFERENCE_ASIC_RATE: f64 = 14e12;

/// Target block interval in seconds.
pub const BLOCK_INTERVAL_SECS: f64 = 600.0;

const TWO_POW_32: f64 = 4_294_967_296.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HashRateForm {
    /// Expected classical hashes `D 2^32` over the modelled solve time.
    #[default]
    FirstPrinciples,
    /// `0.28 s sqrt(D) / c_tau`.
    ClosedForm,
}

impl HashRateForm {
    pub fn name(self) -> &'static str {
        match self {
            Self::FirstPrinciples => "first-principles",
            Self::ClosedForm => "closed-form",
        }
    }
}

impl std::str::FromStr for HashRateForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first-principles" => Ok(Self::FirstPrinciples),
            "closed-form" => Ok(Self::ClosedForm),
            _ => Err(Error::Unknown {
                kind: "hash-rate form",
                value: s.to_owned(),
            }),
        }
    }
}

fn check_difficulty(d: f64) -> Result<()> {
    if d.is_finite() && d >= 1.0 {
        Ok(())
    } else {
        Err(Error::Difficulty(d))
    }
}

fn check_clock(s: f64) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(Error::ClockSpeed(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MiningAttackParams {
    pub difficulty: f64,
    pub clock_hz: f64,
    pub gate: PhysicalGateModel,
    pub machines: u32,
}

impl MiningAttackParams {
    pub fn new(
        difficulty: f64,
        clock_hz: f64,
        gate: PhysicalGateModel,
        machines: u32,
    ) -> Result<Self> {
        check_difficulty(difficulty)?;
        check_clock(clock_hz)?;
        if machines < 1 {
            return Err(Error::InvalidParameter("machine count must be >= 1".into()));
        }
        Ok(Self {
            difficulty,
            clock_hz,
            gate,
            machines,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HashRateEstimate {
    pub form: HashRateForm,
    pub oracle_calls: f64,
    /// Clock cycles per oracle call.
    pub cycles_per_oracle: f64,
    /// Expected single-machine solve time, seconds.
    pub tau: f64,
    /// Effective single-machine hash rate, hashes/second.
    pub h_qc: f64,
    pub tau_parallel: f64,
    pub h_parallel: f64,
    pub n_q: f64,
}

/// Expected Grover oracle calls `pi 2^14 sqrt(10 D)` to solve one block.
pub fn grover_oracle_calls(difficulty: f64) -> Result<f64> {
    check_difficulty(difficulty)?;
    Ok(PI * 16384.0 * (10.0 * difficulty).sqrt())
}

/// Logical profile of the Grover mining circuit at difficulty `D`.
pub fn mining_profile(difficulty: f64) -> Result<LogicalCircuitProfile> {
    let t_count = T_DEPTH_PER_ORACLE * grover_oracle_calls(difficulty)?;
    LogicalCircuitProfile::new(
        t_count,
        MINING_CLIFFORD_PER_T * t_count,
        MINING_LOGICAL_QUBITS,
    )
}

/// Effective hash rate of a quantum miner given its error-correction overheads.
pub fn effective_hash_rate(
    params: &MiningAttackParams,
    overheads: &OverheadResult,
    form: HashRateForm,
) -> Result<HashRateEstimate> {
    check_clock(params.clock_hz)?;
    check_difficulty(params.difficulty)?;
    if !(overheads.c_tau > 0.0) {
        return Err(Error::TimeOverhead(overheads.c_tau));
    }
    let d = params.difficulty;
    let s = params.clock_hz;
    let oracle_calls = grover_oracle_calls(d)?;
    let cycles_per_oracle = T_DEPTH_PER_ORACLE * overheads.c_tau;
    let tau = oracle_calls * cycles_per_oracle / s;
    let h_qc = match form {
        HashRateForm::FirstPrinciples => d * TWO_POW_32 / tau,
        HashRateForm::ClosedForm => CLOSED_FORM_HASH_RATE_COEFF * s * d.sqrt() / overheads.c_tau,
    };
    let root = f64::from(params.machines).sqrt();
    Ok(HashRateEstimate {
        form,
        oracle_calls,
        cycles_per_oracle,
        tau,
        h_qc,
        tau_parallel: PARALLEL_TIME_FACTOR * tau / root,
        h_parallel: PARALLEL_RATE_FACTOR * h_qc * root,
        n_q: overheads.n_q,
    })
}

/// Mining estimate end to end: profile, overheads, hash rate.
pub fn estimate_mining(
    params: &MiningAttackParams,
    mode: DistanceMode,
    formula: QubitFormula,
    form: HashRateForm,
) -> Result<(OverheadResult, HashRateEstimate)> {
    let profile = mining_profile(params.difficulty)?;
    let oh = qec::overheads(params.gate, &profile, mode, formula)?;
    let rate = effective_hash_rate(params, &oh, form)?;
    Ok((oh, rate))
}

/// `0.04 s sqrt(D)`: hash rate with transversal non-Clifford gates and no
/// distillation or syndrome-processing delay.
pub fn optimistic_hash_rate(clock_hz: f64, difficulty: f64) -> f64 {
    OPTIMISTIC_HASH_RATE_COEFF * clock_hz * difficulty.max(0.0).sqrt()
}

/// Network hash rate that solves difficulty `D` in one block interval.
pub fn network_rate_from_difficulty(difficulty: f64) -> f64 {
    difficulty * TWO_POW_32 / BLOCK_INTERVAL_SECS
}

/// Inverse of [`network_rate_from_difficulty`].
pub fn difficulty_from_network_rate(rate: f64) -> f64 {
    rate * BLOCK_INTERVAL_SECS / TWO_POW_32
}

/// Share of the network hash rate held by a pool of optimistic quantum miners.
pub fn pool_attack_fraction(machines: u32, clock_hz: f64, difficulty: f64) -> Result<f64> {
    if machines < 1 {
        return Err(Error::InvalidParameter("machine count must be >= 1".into()));
    }
    check_difficulty(difficulty)?;
    let pool = PARALLEL_RATE_FACTOR
        * optimistic_hash_rate(clock_hz, difficulty)
        * f64::from(machines).sqrt();
    Ok(pool / network_rate_from_difficulty(difficulty))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EcdlpProfile {
    pub key_bits: u32,
    /// Logical qubits including the Toffoli ancillas.
    pub logical_qubits: u64,
    pub toffoli_count: f64,
    pub toffoli_depth: f64,
}

/// Logical cost of Shor's algorithm on an `n`-bit prime-field curve.
pub fn ecdlp_profile(key_bits: u32) -> Result<EcdlpProfile> {
    if key_bits < 2 {
        return Err(Error::InvalidParameter(format!(
            "key size {key_bits} bits < 2"
        )));
    }
    let n = u64::from(key_bits);
    let ceil_log2 = u64::from(u32::BITS - (key_bits - 1).leading_zeros());
    let logical_qubits = 9 * n + 2 * ceil_log2 + 10 + TOFFOLI_ANCILLAS;
    let nf = f64::from(key_bits);
    let toffoli_count = (448.0 * nf.log2() + 4090.0) * nf * nf * nf;
    let toffoli_depth = if key_bits == 256 {
        toffoli_count * (1.16 / 1.28)
    } else {
        toffoli_count
    };
    Ok(EcdlpProfile {
        key_bits,
        logical_qubits,
        toffoli_count,
        toffoli_depth,
    })
}

impl EcdlpProfile {
    /// Circuit profile with one T layer per Toffoli.
    pub fn circuit(&self) -> Result<LogicalCircuitProfile> {
        LogicalCircuitProfile::new(
            self.toffoli_count,
            SIGNATURE_CLIFFORD_PER_T * self.toffoli_count,
            self.logical_qubits,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignatureAttackParams {
    pub key_bits: u32,
    pub clock_hz: f64,
    pub gate: PhysicalGateModel,
}

impl SignatureAttackParams {
    pub fn new(key_bits: u32, clock_hz: f64, gate: PhysicalGateModel) -> Result<Self> {
        if key_bits < 2 {
            return Err(Error::InvalidParameter(format!(
                "key size {key_bits} bits < 2"
            )));
        }
        check_clock(clock_hz)?;
        Ok(Self {
            key_bits,
            clock_hz,
            gate,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureEstimate {
    pub profile: EcdlpProfile,
    pub overheads: OverheadResult,
    /// Seconds to recover one private key.
    pub tau: f64,
    pub n_q: f64,
}

pub fn signature_crack_estimate(
    params: &SignatureAttackParams,
    mode: DistanceMode,
    formula: QubitFormula,
) -> Result<SignatureEstimate> {
    check_clock(params.clock_hz)?;
    let profile = ecdlp_profile(params.key_bits)?;
    let overheads = qec::overheads(params.gate, &profile.circuit()?, mode, formula)?;
    Ok(SignatureEstimate {
        tau: profile.toffoli_count * overheads.c_tau / params.clock_hz,
        n_q: overheads.n_q,
        profile,
        overheads,
    })
}
