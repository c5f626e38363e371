//! Executable proofs-of-work.
//!
//! * Hashcash over 80-byte block headers with double SHA-256, as mined by
//!   Bitcoin. Digests are compared to the target as big-endian integers.
//! * Momentum, a collision-based proof-of-work: find `(H, a, b)` with
//!   `h2(H || a) == h2(H || b)` and `h1(H || a || b) <= t`.
//!
//! Both come with a miner, a verifier and a cost model; Momentum also has an
//! exhaustive oracle for small parameters.

mod cost;
mod hashcash;
mod header;
mod momentum;
mod target;

pub use cost::{classical_cost_model, quantum_cost_model, CostModelReport};
pub use hashcash::{
    expected_hashes, hashcash_mine, hashcash_mine_parallel, hashcash_verify, MineOutcome,
    NonceSearch,
};
pub use header::{sha256d, BlockHeader, HEADER_LEN};
pub use momentum::{
    h1, h2, momentum_bruteforce_oracle, momentum_collect, momentum_header_hash, momentum_mine,
    momentum_mine_headers, momentum_mine_parallel, momentum_verify, HeaderSearch, MomentumParams,
    MomentumRun, MomentumSolution, SolutionRecord, ORACLE_MAX_ELL,
};
pub use target::{difficulty_to_target, target_to_difficulty, Target};
