//! Seeded event-driven simulation of the installed system under a
//! maintenance policy, with ensemble statistics and hazard estimates.

mod engine;
mod ensemble;
mod estimate;
mod seed;
mod trace;

pub use engine::{run_replication, SimConfig};
pub use ensemble::{ensemble_hazard_curve, run_ensemble, simulate_ensemble, Ensemble, Metrics, ReplicationMetrics, Summary};
pub use estimate::{empirical_hazard, HazardBin};
pub use seed::{derive_seed, uniform_open};
pub use trace::{Event, EventKind, FailureRecord, Snapshot, SoloSpan, Trace};
