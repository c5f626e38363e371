//! Momentum proof-of-work at desk scale.
//!
//! Hash instantiation:
//!
//! * `h1(x)` = SHA-256(x) truncated to its leading `n` bits,
//! * `h2(x)` = SHA-256(0x02 || x) truncated to its leading `ell` bits,
//!
//! where the header hash `H` and the nonces `a`, `b` are each encoded as
//! 8-byte big-endian integers. A solution satisfies
//! `h2(H || a) == h2(H || b)`, `h1(H || a || b) <= t`, `a != b` and
//! `a, b < 2^ell`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// Largest `ell` the exhaustive oracle accepts.
pub const ORACLE_MAX_ELL: u32 = 14;

const H2_DOMAIN: u8 = 0x02;
const MAX_SUBSET_BITS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MomentumParams {
    /// Output bits of `h1`, and width of the header hash `H`.
    pub n: u32,
    /// Output bits of `h2` and nonce width.
    pub ell: u32,
    /// Target on `h1`, `1 <= t <= 2^n - 1`.
    pub target: u64,
    /// `log2 |S|`: the miner evaluates `h2` on nonces `0 .. 2^subset_bits`.
    pub subset_bits: u32,
}

impl MomentumParams {
    pub fn new(n: u32, ell: u32, target: u64, subset_bits: u32) -> Result<Self> {
        if !(1..=64).contains(&ell) {
            return Err(Error::InvalidParameter(format!(
                "ell = {ell} outside 1..=64"
            )));
        }
        if !(1..=ell).contains(&n) {
            return Err(Error::InvalidParameter(format!("n = {n} outside 1..=ell")));
        }
        if subset_bits > ell.min(MAX_SUBSET_BITS) {
            return Err(Error::InvalidParameter(format!(
                "subset_bits = {subset_bits} exceeds min(ell, {MAX_SUBSET_BITS})"
            )));
        }
        if target == 0 || target > mask(n) {
            return Err(Error::InvalidParameter(format!(
                "target {target} outside 1..=2^{n}-1"
            )));
        }
        Ok(Self {
            n,
            ell,
            target,
            subset_bits,
        })
    }

    pub fn subset_size(&self) -> u64 {
        1u64 << self.subset_bits
    }

    /// `2^(n + ell) / t`, the expected number of `h2` collisions that must be
    /// examined, times `2^ell`.
    pub fn work_ratio(&self) -> f64 {
        2f64.powi((self.n + self.ell) as i32) / self.target as f64
    }
}

fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

fn leading_bits(digest: &[u8], bits: u32) -> u64 {
    let top = u64::from_be_bytes(digest[..8].try_into().unwrap());
    if bits >= 64 {
        top
    } else {
        top >> (64 - bits)
    }
}

/// `h1(H || a || b)`.
pub fn h1(n: u32, header_hash: u64, a: u64, b: u64) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(header_hash.to_be_bytes());
    hasher.update(a.to_be_bytes());
    hasher.update(b.to_be_bytes());
    leading_bits(&hasher.finalize(), n)
}

/// `h2(H || a)`.
pub fn h2(ell: u32, header_hash: u64, a: u64) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update([H2_DOMAIN]);
    hasher.update(header_hash.to_be_bytes());
    hasher.update(a.to_be_bytes());
    leading_bits(&hasher.finalize(), ell)
}

/// `H = h1(header)`: leading `n` bits of SHA-256 over the raw header bytes.
pub fn momentum_header_hash(header: &[u8], n: u32) -> u64 {
    leading_bits(&Sha256::digest(header), n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MomentumSolution {
    pub header_hash: u64,
    pub a: u64,
    pub b: u64,
}

/// Counters and result of a mining run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MomentumRun {
    pub solution: Option<MomentumSolution>,
    /// Index of the solving header in a multi-header search.
    pub header_index: Option<u64>,
    pub headers_tried: u64,
    pub h2_evaluations: u64,
    pub h1_evaluations: u64,
}

/// Checks every condition of a Momentum solution. Two `h2` calls, one `h1`.
pub fn momentum_verify(solution: &MomentumSolution, params: &MomentumParams) -> bool {
    let MomentumSolution { header_hash, a, b } = *solution;
    let limit = mask(params.ell);
    a != b
        && a <= limit
        && b <= limit
        && header_hash <= mask(params.n)
        && h2(params.ell, header_hash, a) == h2(params.ell, header_hash, b)
        && h1(params.n, header_hash, a, b) <= params.target
}

/// Streams the subset `S = {0, .., 2^subset_bits - 1}` through a collision
/// table and stops at the first solution.
///
/// Nonces are inserted in increasing order. When `b` lands in a bucket
/// already holding `a1 < a2 < ..`, the pairs `(a1, b), (a2, b), ..` are tested
/// in that order, so solutions are found in order of `(b, a)`.
pub fn momentum_mine(header_hash: u64, params: &MomentumParams) -> MomentumRun {
    let mut solution = None;
    let (h2_evaluations, h1_evaluations) = scan(header_hash, params, |sol| {
        solution = Some(sol);
        false
    });
    MomentumRun {
        solution,
        header_index: None,
        headers_tried: 1,
        h2_evaluations,
        h1_evaluations,
    }
}

/// Every solution reachable from `S`, in miner order.
pub fn momentum_collect(header_hash: u64, params: &MomentumParams) -> Vec<MomentumSolution> {
    let mut found = Vec::new();
    scan(header_hash, params, |sol| {
        found.push(sol);
        true
    });
    found
}

/// Returns `(h2 evaluations, h1 evaluations)`. Stops when `on_solution`
/// returns false.
fn scan(
    header_hash: u64,
    params: &MomentumParams,
    mut on_solution: impl FnMut(MomentumSolution) -> bool,
) -> (u64, u64) {
    let mut table: HashMap<u64, Vec<u64>> = HashMap::with_capacity(params.subset_size() as usize);
    let (mut h2_evals, mut h1_evals) = (0, 0);
    for b in 0..params.subset_size() {
        let digest = h2(params.ell, header_hash, b);
        h2_evals += 1;
        let bucket = table.entry(digest).or_default();
        for &a in bucket.iter() {
            h1_evals += 1;
            if h1(params.n, header_hash, a, b) <= params.target
                && !on_solution(MomentumSolution { header_hash, a, b })
            {
                return (h2_evals, h1_evals);
            }
        }
        bucket.push(b);
    }
    (h2_evals, h1_evals)
}

/// Same result as [`momentum_mine`], with `h2` evaluated on worker threads
/// in chunks of `chunk` nonces ahead of the serial collision scan.
pub fn momentum_mine_parallel(
    header_hash: u64,
    params: &MomentumParams,
    chunk: u64,
) -> MomentumRun {
    let chunk = chunk.max(1);
    let mut run = MomentumRun {
        headers_tried: 1,
        ..Default::default()
    };
    let mut table: HashMap<u64, Vec<u64>> = HashMap::new();
    let size = params.subset_size();
    let mut start = 0;
    while start < size {
        let end = (start + chunk).min(size);
        let digests: Vec<u64> = (start..end)
            .into_par_iter()
            .map(|b| h2(params.ell, header_hash, b))
            .collect();
        run.h2_evaluations += end - start;
        for (b, digest) in (start..end).zip(digests) {
            let bucket = table.entry(digest).or_default();
            for &a in bucket.iter() {
                run.h1_evaluations += 1;
                if h1(params.n, header_hash, a, b) <= params.target {
                    run.solution = Some(MomentumSolution { header_hash, a, b });
                    return run;
                }
            }
            bucket.push(b);
        }
        start = end;
    }
    run
}

/// Headers tried by [`momentum_mine_headers`]: `base || index` with the
/// index as 8 little-endian bytes, for `index` in `start .. start + count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeaderSearch {
    pub base: Vec<u8>,
    pub start: u64,
    pub count: u64,
}

impl HeaderSearch {
    pub fn header_bytes(&self, index: u64) -> Vec<u8> {
        let mut bytes = self.base.clone();
        bytes.extend_from_slice(&index.to_le_bytes());
        bytes
    }
}

/// Tries successive headers until one yields a solution. Counters accumulate
/// over all headers tried.
pub fn momentum_mine_headers(search: &HeaderSearch, params: &MomentumParams) -> MomentumRun {
    let mut total = MomentumRun::default();
    for index in search.start..search.start.saturating_add(search.count) {
        let header_hash = momentum_header_hash(&search.header_bytes(index), params.n);
        let run = momentum_mine(header_hash, params);
        total.headers_tried += 1;
        total.h2_evaluations += run.h2_evaluations;
        total.h1_evaluations += run.h1_evaluations;
        if run.solution.is_some() {
            total.solution = run.solution;
            total.header_index = Some(index);
            break;
        }
    }
    total
}

/// Exhaustive enumeration of all pairs `a < b < 2^ell` passing
/// [`momentum_verify`]. Ignores `subset_bits`.
pub fn momentum_bruteforce_oracle(
    header_hash: u64,
    params: &MomentumParams,
) -> Result<BTreeSet<MomentumSolution>> {
    if params.ell > ORACLE_MAX_ELL {
        return Err(Error::InvalidParameter(format!(
            "oracle limited to ell <= {ORACLE_MAX_ELL}, got {}",
            params.ell
        )));
    }
    let size = 1u64 << params.ell;
    let digests: Vec<u64> = (0..size).map(|a| h2(params.ell, header_hash, a)).collect();
    let mut out = BTreeSet::new();
    for b in 0..size {
        let db = digests[b as usize];
        for a in 0..b {
            if digests[a as usize] == db {
                let sol = MomentumSolution { header_hash, a, b };
                if momentum_verify(&sol, params) {
                    out.insert(sol);
                }
            }
        }
    }
    Ok(out)
}

/// One-line textual record of a solution and its parameters:
///
/// ```text
/// momentum H=00000000000000a7 a=17 b=903 n=8 ell=12 t=255 subset_bits=12
/// ```
///
/// `H` is 16 hex digits; the other fields are decimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolutionRecord {
    pub solution: MomentumSolution,
    pub params: MomentumParams,
}

impl fmt::Display for SolutionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.solution;
        let p = &self.params;
        write!(
            f,
            "momentum H={:016x} a={} b={} n={} ell={} t={} subset_bits={}",
            s.header_hash, s.a, s.b, p.n, p.ell, p.target, p.subset_bits
        )
    }
}

impl std::str::FromStr for SolutionRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("momentum") {
            return Err(Error::Parse("record must start with `momentum`".into()));
        }
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for tok in tokens {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{tok}`")))?;
            if fields.insert(k, v).is_some() {
                return Err(Error::Parse(format!("duplicate field `{k}`")));
            }
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| Error::Parse(format!("missing field `{k}`")))
        };
        let dec = |k: &str| -> Result<u64> {
            get(k)?
                .parse()
                .map_err(|e| Error::Parse(format!("field `{k}`: {e}")))
        };
        let header_hash = u64::from_str_radix(get("H")?, 16)
            .map_err(|e| Error::Parse(format!("field `H`: {e}")))?;
        let narrow = |k: &str| -> Result<u32> {
            u32::try_from(dec(k)?).map_err(|_| Error::Parse(format!("field `{k}` too large")))
        };
        let params = MomentumParams::new(
            narrow("n")?,
            narrow("ell")?,
            dec("t")?,
            narrow("subset_bits")?,
        )?;
        if fields.len() != 7 {
            return Err(Error::Parse("unexpected extra fields".into()));
        }
        Ok(Self {
            solution: MomentumSolution {
                header_hash,
                a: dec("a")?,
                b: dec("b")?,
            },
            params,
        })
    }
}
