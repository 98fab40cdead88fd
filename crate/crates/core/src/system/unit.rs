use std::fmt;

use serde::{Deserialize, Serialize};

use super::config::SystemConfig;
use crate::error::{Error, Result};

/// Controller identifiers of the duplex-plus-spare architecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnitId {
    #[serde(rename = "controller_1")]
    Controller1,
    #[serde(rename = "controller_2")]
    Controller2,
    #[serde(rename = "controller_3")]
    Controller3,
}

impl UnitId {
    pub const ALL: [UnitId; 3] = [UnitId::Controller1, UnitId::Controller2, UnitId::Controller3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            UnitId::Controller1 => "controller_1",
            UnitId::Controller2 => "controller_2",
            UnitId::Controller3 => "controller_3",
        }
    }
}

impl fmt::Display for UnitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Zero-based active slot index; displayed as `slot_1`, `slot_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot(pub usize);

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "slot_{}", self.0 + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitStatus {
    Active(Slot),
    OnShelf,
    Failed,
}

/// One controller unit and its age accounting.
#[derive(Debug, Clone, PartialEq)]
pub struct Unit {
    pub id: UnitId,
    /// Lifetime budget in effective-age weeks.
    pub lifetime: f64,
    pub onjob_age: f64,
    pub shelf_age: f64,
    pub lab_burnin_credit: f64,
    /// Age offset applied when evaluating the hazard (analytic stagger).
    pub stagger: f64,
    pub status: UnitStatus,
}

impl Unit {
    pub fn new(id: UnitId, lifetime: f64, status: UnitStatus) -> Self {
        Unit {
            id,
            lifetime,
            onjob_age: 0.0,
            shelf_age: 0.0,
            lab_burnin_credit: 0.0,
            stagger: 0.0,
            status,
        }
    }

    pub fn effective_age(&self, shelf_aging_factor: f64) -> f64 {
        effective_age(self, shelf_aging_factor)
    }

    pub fn is_active(&self) -> bool {
        matches!(self.status, UnitStatus::Active(_))
    }
}

/// Consumed life: lab credit + aged shelf time + time on the job.
pub fn effective_age(unit: &Unit, shelf_aging_factor: f64) -> f64 {
    unit.lab_burnin_credit + shelf_aging_factor * unit.shelf_age + unit.onjob_age
}

/// Failure rate of `unit` at calendar time `t`.
///
/// The hardware term is the bathtub curve at the unit's effective age plus
/// its stagger, so a unit with stagger `d` has exactly the hazard of an
/// otherwise identical unit `d` weeks older. Software and operator terms only
/// apply while the unit sits in a slot; they follow calendar time.
pub fn unit_hazard(unit: &Unit, t: f64, config: &SystemConfig) -> Result<f64> {
    if unit.status == UnitStatus::Failed {
        return Err(Error::State(format!("{} has failed", unit.id)));
    }
    let age = (effective_age(unit, config.shelf_aging_factor) + unit.stagger).max(0.0);
    let mut h = config.hazard.hazard(age)?;
    if unit.is_active() {
        if let Some(sw) = &config.software {
            h += sw.hazard(t)?;
        }
        h += config.operator_rate();
    }
    Ok(h)
}
