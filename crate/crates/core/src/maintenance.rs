//! Maintenance policies, their decision rules and the red-zone condition.
//!
//! Type 1 installs the shelf spare only when a main unit fails. Type 2 also
//! rotates the shelf unit into service every `rotation_period` weeks,
//! swapping out the oldest active unit, so that the three units consume
//! their lifetime budgets evenly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::montecarlo::{EventKind, Trace};
use crate::system::{Slot, SystemConfig, UnitId};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Policy {
    /// Replace on failure.
    Type1,
    /// Replace on failure plus periodic rotation of the shelf unit.
    Type2 { rotation_period: f64 },
}

impl Policy {
    /// Rotation policy with the default period of one sixth of the unit lifetime.
    pub fn type2_default(unit_lifetime: f64) -> Policy {
        Policy::Type2 { rotation_period: unit_lifetime / 6.0 }
    }

    pub fn validate(&self, path: &str) -> Result<()> {
        if let Policy::Type2 { rotation_period } = *self {
            if !rotation_period.is_finite() || rotation_period <= 0.0 {
                return Err(Error::validation(
                    format!("{path}.rotation_period"),
                    format!("must be finite and > 0, got {rotation_period}"),
                ));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self {
            Policy::Type1 => "type1",
            Policy::Type2 { .. } => "type2",
        }
    }

    pub fn rotation_period(&self) -> Option<f64> {
        match *self {
            Policy::Type1 => None,
            Policy::Type2 { rotation_period } => Some(rotation_period),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    ReplaceFailed,
    Rotate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaintenanceAction {
    pub time: f64,
    pub kind: ActionKind,
    pub slot: Slot,
    pub unit_in: UnitId,
    pub unit_out: UnitId,
}

/// An unfailed unit as seen by the planner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitView {
    pub unit: UnitId,
    pub effective_age: f64,
}

/// Snapshot of slots and shelf. Failed units do not appear.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantState {
    pub time: f64,
    pub slots: Vec<Option<UnitView>>,
    pub shelf: Option<UnitView>,
}

/// Replace-on-failure: install the shelf unit into the slot that just lost
/// `failed`, if the shelf holds an unfailed unit.
pub fn plan_type1(state: &PlantState, failed: Option<(Slot, UnitId)>) -> Option<MaintenanceAction> {
    let (slot, unit_out) = failed?;
    let spare = state.shelf?;
    Some(MaintenanceAction {
        time: state.time,
        kind: ActionKind::ReplaceFailed,
        slot,
        unit_in: spare.unit,
        unit_out,
    })
}

pub(crate) fn is_rotation_epoch(t: f64, period: f64) -> bool {
    let k = (t / period).round();
    k >= 1.0 && (t - k * period).abs() <= 1e-9 * t.max(1.0)
}

/// Rotation: at `t = k * period` swap the shelf unit with the active unit of
/// greatest effective age (ties go to the lower slot). Returns nothing off an
/// epoch, with an empty shelf, or with an empty slot.
pub fn plan_type2(state: &PlantState, period: f64) -> Option<MaintenanceAction> {
    if !is_rotation_epoch(state.time, period) {
        return None;
    }
    let spare = state.shelf?;
    let mut oldest: Option<(Slot, UnitView)> = None;
    for (i, s) in state.slots.iter().enumerate() {
        let v = (*s)?;
        if oldest.is_none_or(|(_, best)| v.effective_age > best.effective_age) {
            oldest = Some((Slot(i), v));
        }
    }
    let (slot, out) = oldest?;
    Some(MaintenanceAction {
        time: state.time,
        kind: ActionKind::Rotate,
        slot,
        unit_in: spare.unit,
        unit_out: out.unit,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionRule {
    /// Commissioning plus a fraction of the vendor MTBF.
    VendorMtbf,
    /// Still redundant but nothing left on the shelf.
    ShelfEmpty,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecisionPoint {
    pub time: f64,
    pub rule: DecisionRule,
}

/// Decision point of a replace-on-failure installation: `dp_warn_factor` times
/// the vendor MTBF after commissioning.
pub fn vendor_decision_point(config: &SystemConfig) -> DecisionPoint {
    DecisionPoint {
        time: config.dp_warn_factor * config.vendor_mtbf(),
        rule: DecisionRule::VendorMtbf,
    }
}

/// Decision point for `policy`.
///
/// Type 1 uses the vendor-statistics rule. Type 2 replays the trace and
/// returns the first instant at which both slots hold unfailed units while
/// the shelf is empty; `None` if that never happens.
pub fn decision_point(policy: &Policy, trace: &Trace, config: &SystemConfig) -> Option<DecisionPoint> {
    match policy {
        Policy::Type1 => Some(vendor_decision_point(config)),
        Policy::Type2 { .. } => {
            let slots = config.architecture.active_slots;
            trace
                .replay(&config.architecture)
                .into_iter()
                .filter(|snap| snap.kinds.iter().all(|k| *k != EventKind::Dp))
                .find(|snap| snap.alive_in_slots == slots && slots >= 2 && snap.shelf.is_none())
                .map(|snap| DecisionPoint { time: snap.time, rule: DecisionRule::ShelfEmpty })
        }
    }
}

/// Red-zone existence condition: lifetime spread strictly below the wear-out
/// duration.
pub fn red_zone_condition(spread: f64, th3: f64) -> Result<bool> {
    if !spread.is_finite() || spread < 0.0 {
        return Err(Error::Domain(format!("spread must be >= 0, got {spread}")));
    }
    if !th3.is_finite() || th3 <= 0.0 {
        return Err(Error::Domain(format!("th3 must be > 0, got {th3}")));
    }
    Ok(spread < th3)
}
