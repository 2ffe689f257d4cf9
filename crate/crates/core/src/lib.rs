//! Multi-armed bandit simulation library built around residual bootstrap
//! exploration.
//!
//! The crate provides:
//!
//! - [`weights`]: zero-mean unit-variance bootstrap weight generators,
//! - [`armstats`]: incremental per-arm sufficient statistics (mean, RSS) and
//!   the pseudo-residual scheme that inflates exploration variance,
//! - [`policies`]: arm-index rules (residual bootstrap with and without the
//!   Gaussian fast path, vanilla residual bootstrap, follow-the-leader,
//!   Gaussian Thompson sampling, Giro, PHE) and bootstrap-leader selection,
//! - [`envs`]: reward distributions with known means and bandit instances,
//! - [`sim`]: episode runner, cross-run aggregation, and wall-time benchmarks,
//! - [`theory`]: regret-bound constants, sample-size thresholds, and numeric
//!   tail-inequality checks.
//!
//! Everything is deterministic given explicit seeds: random streams are
//! passed as arguments, never pulled from global state, so runs are
//! reproducible and embarrassingly parallel.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature additionally enables wall-clock timing in [`sim`].

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod armstats;
pub mod envs;
mod error;
mod math;
pub mod policies;
pub mod rng;
pub mod sim;
pub mod theory;
pub mod weights;

pub use error::{Error, Result};
