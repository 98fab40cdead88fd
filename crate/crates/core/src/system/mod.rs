//! Unit age accounting, redundancy composition and the deterministic
//! scenario timeline.

mod compose;
mod config;
mod scenario;
mod unit;

pub use compose::{compose_parallel, UnitRate};
pub use config::{Architecture, FailureMode, SystemConfig};
pub use scenario::{
    scenario_timeline, system_hazard_curve, ActiveUnit, Boundaries, Composition, CurvePoint, Marker, Phase,
    ScenarioSegment, ScenarioTimeline,
};
pub use unit::{effective_age, unit_hazard, Slot, Unit, UnitId, UnitStatus};
