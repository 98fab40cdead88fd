//! Failure-rate analysis and maintenance-policy simulation for a redundant
//! controller pair backed by one shelf spare.
//!
//! The crate is organised bottom-up:
//!
//! - [`hazards`]: bathtub, software and operator hazard kernels and the
//!   lognormal lifetime model.
//! - [`system`]: unit age accounting, 1-out-of-k parallel composition and the
//!   deterministic end-of-life scenario.
//! - [`maintenance`]: replace-on-failure and rotation policies, decision
//!   points and the red-zone existence condition.
//! - [`montecarlo`]: seeded event-driven simulation and ensemble statistics.
//! - [`analysis`]: red-zone detection, lifetime extension and spread sweeps.
//! - [`cli`]: run configuration and the CSV/JSON emitters behind the
//!   `redzone` binary.
//!
//! All times are in weeks and all rates in failures per week.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod hazards;
pub mod maintenance;
pub mod montecarlo;
pub mod system;

pub use error::{Error, Result};
