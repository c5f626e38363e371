use rayon::prelude::*;

use super::header::BlockHeader;
use super::target::Target;

/// Expected hashes to solve difficulty `D`: `D * 2^32`.
pub fn expected_hashes(difficulty: f64) -> f64 {
    difficulty * 4_294_967_296.0
}

/// True iff the header's double SHA-256 is at most `target`.
pub fn hashcash_verify(header: &BlockHeader, target: &Target) -> bool {
    target.is_met_by(&header.hash())
}

/// Search space scanned by the miner.
///
/// The nonce varies fastest over `nonce_count` values starting at
/// `nonce_start` (wrapping), then the lowest `timestamp_bits` bits of the
/// timestamp are flipped through all `2^timestamp_bits` patterns. Pattern 0
/// leaves the template timestamp unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonceSearch {
    pub nonce_start: u32,
    pub nonce_count: u64,
    pub timestamp_bits: u8,
}

impl Default for NonceSearch {
    fn default() -> Self {
        Self {
            nonce_start: 0,
            nonce_count: 1 << 32,
            timestamp_bits: 0,
        }
    }
}

impl NonceSearch {
    fn nonce_count(&self) -> u64 {
        self.nonce_count.min(1 << 32)
    }

    pub fn len(&self) -> u64 {
        self.nonce_count()
            .saturating_mul(1u64 << self.timestamp_bits.min(32))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Header at position `index` of the scan order.
    pub fn header_at(&self, template: &BlockHeader, index: u64) -> BlockHeader {
        let per_ts = self.nonce_count();
        let mut h = *template;
        h.nonce = self.nonce_start.wrapping_add((index % per_ts) as u32);
        h.timestamp = template.timestamp ^ (index / per_ts) as u32;
        h
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MineOutcome {
    Found { header: BlockHeader, attempts: u64 },
    Exhausted { attempts: u64 },
}

impl MineOutcome {
    pub fn attempts(&self) -> u64 {
        match *self {
            Self::Found { attempts, .. } | Self::Exhausted { attempts } => attempts,
        }
    }

    pub fn header(&self) -> Option<&BlockHeader> {
        match self {
            Self::Found { header, .. } => Some(header),
            Self::Exhausted { .. } => None,
        }
    }
}

/// Returns the first header in scan order that meets `target`.
pub fn hashcash_mine(template: &BlockHeader, target: &Target, search: &NonceSearch) -> MineOutcome {
    let total = search.len();
    for index in 0..total {
        let header = search.header_at(template, index);
        if hashcash_verify(&header, target) {
            return MineOutcome::Found {
                header,
                attempts: index + 1,
            };
        }
    }
    MineOutcome::Exhausted { attempts: total }
}

/// Parallel scan with the same result as [`hashcash_mine`].
///
/// The scan advances in batches; within a batch the lowest solving index
/// wins, so the reported header and attempt count match the serial miner.
pub fn hashcash_mine_parallel(
    template: &BlockHeader,
    target: &Target,
    search: &NonceSearch,
    batch: u64,
) -> MineOutcome {
    let total = search.len();
    let batch = batch.max(1);
    let mut start = 0;
    while start < total {
        let end = (start + batch).min(total);
        let hit = (start..end)
            .into_par_iter()
            .find_first(|&i| hashcash_verify(&search.header_at(template, i), target));
        if let Some(index) = hit {
            return MineOutcome::Found {
                header: search.header_at(template, index),
                attempts: index + 1,
            };
        }
        start = end;
    }
    MineOutcome::Exhausted { attempts: total }
}
