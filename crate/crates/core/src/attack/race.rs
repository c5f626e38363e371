//! Probability that an attacker starting `k` blocks behind ever catches up.
//!
//! Blocks are won one at a time: the attacker wins the next block with
//! probability `q`, the honest network with `1 - q`. This is the classic
//! gambler's-ruin race, with catch-up probability `min(1, (q/(1-q))^k)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Simulated races stop once the attacker has fallen this far behind.
/// For `q < 1/2` the residual catch-up chance from there is
/// `(q/(1-q))^k+cap`, which the cap choice keeps below 1e-15.
const MAX_EXTRA_DEFICIT: u64 = 10_000;

/// Races with `q >= 1/2` are cut off after this many blocks.
const MAX_BLOCKS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "method")]
pub enum RaceMethod {
    Analytic,
    MonteCarlo {
        seed: u64,
        trials: u64,
        /// Number of deterministic trial partitions; 1 runs on the caller's
        /// thread. Results depend on `workers` but not on scheduling.
        workers: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaceEstimate {
    pub probability: f64,
    /// Standard error of a Monte-Carlo estimate; `None` for analytic.
    pub std_error: Option<f64>,
    pub successes: Option<u64>,
    pub trials: Option<u64>,
}

pub fn race_success_probability(q: f64, k: u64, method: RaceMethod) -> Result<RaceEstimate> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Probability(q));
    }
    match method {
        RaceMethod::Analytic => Ok(RaceEstimate {
            probability: analytic(q, k),
            std_error: None,
            successes: None,
            trials: None,
        }),
        RaceMethod::MonteCarlo {
            seed,
            trials,
            workers,
        } => {
            if trials == 0 {
                return Err(Error::InvalidParameter(
                    "trial count must be positive".into(),
                ));
            }
            let workers = u64::from(workers.max(1));
            let successes: u64 = (0..workers)
                .into_par_iter()
                .map(|w| {
                    let share = trials / workers + u64::from(w < trials % workers);
                    let mut rng = ChaCha8Rng::seed_from_u64(worker_seed(seed, w));
                    (0..share).filter(|_| simulate(&mut rng, q, k)).count() as u64
                })
                .sum();
            let p = successes as f64 / trials as f64;
            Ok(RaceEstimate {
                probability: p,
                std_error: Some((p * (1.0 - p) / trials as f64).sqrt()),
                successes: Some(successes),
                trials: Some(trials),
            })
        }
    }
}

fn analytic(q: f64, k: u64) -> f64 {
    if k == 0 || q >= 0.5 {
        return 1.0;
    }
    (q / (1.0 - q)).powf(k as f64).min(1.0)
}

/// splitmix64 step over the master seed; worker 0 of a single-worker run
/// still gets a mixed seed so serial and one-worker runs agree.
fn worker_seed(master: u64, worker: u64) -> u64 {
    let mut z = master.wrapping_add(worker.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn simulate(rng: &mut impl Rng, q: f64, k: u64) -> bool {
    if k == 0 {
        return true;
    }
    let give_up = give_up_deficit(q, k);
    let mut deficit = k;
    for _ in 0..MAX_BLOCKS {
        if rng.random_bool(q) {
            deficit -= 1;
            if deficit == 0 {
                return true;
            }
        } else {
            deficit += 1;
            if deficit >= give_up {
                return false;
            }
        }
    }
    false
}

fn give_up_deficit(q: f64, k: u64) -> u64 {
    if q <= 0.0 {
        return k + 1;
    }
    if q >= 0.5 {
        return u64::MAX;
    }
    let ratio = q / (1.0 - q);
    let extra = (1e-15f64.ln() / ratio.ln()).ceil() as u64;
    k + extra.clamp(1, MAX_EXTRA_DEFICIT)
}
