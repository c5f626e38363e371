//! Quantum threat estimation for proof-of-work blockchains.
//!
//! The crate is split along the lines of the models it implements:
//!
//! * [`qec`] turns logical circuit sizes into surface-code time and space
//!   overheads (magic-state factory planning plus circuit code distance).
//! * [`attack`] builds the Grover mining and Shor/ECDLP signature attack
//!   estimates on top of those overheads, plus a confirmation-race calculator.
//! * [`forecast`] extrapolates hardware and network trends and locates the
//!   years in which the attacks become practical.
//! * [`pow`] contains runnable hashcash and Momentum proofs-of-work together
//!   with their classical and quantum cost models.

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod attack;
pub mod error;
pub mod forecast;
pub mod pow;
pub mod qec;

pub use error::{Error, Result};
