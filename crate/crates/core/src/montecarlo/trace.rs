use serde::Serialize;

use crate::maintenance::DecisionPoint;
use crate::system::{Architecture, Slot, UnitId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Failure,
    Replace,
    Rotate,
    Dp,
    SystemDeath,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Failure => "failure",
            EventKind::Replace => "replace",
            EventKind::Rotate => "rotate",
            EventKind::Dp => "dp",
            EventKind::SystemDeath => "system_death",
        }
    }
}

/// One timeline entry.
///
/// `unit` is the failed unit for failures and the incoming unit for replace
/// and rotate; `unit_out` is the unit leaving the slot. A failure on the
/// shelf has no slot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Event {
    pub time: f64,
    pub kind: EventKind,
    pub unit: Option<UnitId>,
    pub slot: Option<Slot>,
    pub unit_out: Option<UnitId>,
}

/// Age accounting of a unit at the instant it failed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FailureRecord {
    pub unit: UnitId,
    pub time: f64,
    pub effective_age: f64,
    pub onjob_age: f64,
    pub lifetime: f64,
}

/// Interval during which a single unit carries the system with nothing left
/// on the shelf.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SoloSpan {
    pub unit: UnitId,
    pub start: f64,
    pub end: f64,
    pub age_at_start: f64,
}

/// One simulated system life.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub seed: u64,
    /// Sampled lifetime budget per unit, in unit order.
    pub lifetimes: Vec<f64>,
    pub events: Vec<Event>,
    pub failures: Vec<FailureRecord>,
    /// End of redundant operation; `None` only when censored first.
    pub trdd: Option<f64>,
    /// System death; `None` when censored.
    pub tdt: Option<f64>,
    /// System death or the horizon.
    pub end_time: f64,
    pub censored: bool,
    pub dp: Option<DecisionPoint>,
    pub solo_spans: Vec<SoloSpan>,
}

impl Trace {
    /// Decision-realisation margin `Tdt - DP`, when both exist.
    pub fn tdr(&self) -> Option<f64> {
        Some(self.tdt? - self.dp?.time)
    }

    /// Slot and shelf occupancy after each distinct event time, starting
    /// with the commissioning configuration at t = 0.
    pub fn replay(&self, arch: &Architecture) -> Vec<Snapshot> {
        let mut slots: Vec<Option<UnitId>> = UnitId::ALL[..arch.active_slots].iter().copied().map(Some).collect();
        let mut shelf = (arch.spares > 0).then(|| UnitId::ALL[arch.active_slots]);
        let snap = |time: f64, kinds: Vec<EventKind>, slots: &[Option<UnitId>], shelf: Option<UnitId>| Snapshot {
            time,
            kinds,
            alive_in_slots: slots.iter().flatten().count(),
            slots: slots.to_vec(),
            shelf,
        };
        let mut out = vec![snap(0.0, Vec::new(), &slots, shelf)];
        let mut i = 0;
        while i < self.events.len() {
            let time = self.events[i].time;
            let mut kinds = Vec::new();
            while i < self.events.len() && self.events[i].time == time {
                let e = self.events[i];
                kinds.push(e.kind);
                match e.kind {
                    EventKind::Failure => {
                        if let Some(Slot(s)) = e.slot {
                            slots[s] = None;
                        } else if shelf == e.unit {
                            shelf = None;
                        }
                    }
                    EventKind::Replace => {
                        if let Some(Slot(s)) = e.slot {
                            slots[s] = e.unit;
                            shelf = None;
                        }
                    }
                    EventKind::Rotate => {
                        if let Some(Slot(s)) = e.slot {
                            slots[s] = e.unit;
                            shelf = e.unit_out;
                        }
                    }
                    EventKind::Dp | EventKind::SystemDeath => {}
                }
                i += 1;
            }
            out.push(snap(time, kinds, &slots, shelf));
        }
        out
    }
}

/// Occupancy after all events at `time` have been applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub time: f64,
    pub kinds: Vec<EventKind>,
    pub slots: Vec<Option<UnitId>>,
    pub shelf: Option<UnitId>,
    pub alive_in_slots: usize,
}
