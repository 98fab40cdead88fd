//! Deterministic end-of-life timeline of the duplex system under
//! replace-on-failure, and its composed hazard curve.

use rayon::prelude::*;
use serde::Serialize;

use super::compose::{compose_parallel, UnitRate};
use super::config::SystemConfig;
use super::unit::{unit_hazard, Slot, Unit, UnitId, UnitStatus};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    BurnIn,
    Useful,
    WearOut,
}

impl Phase {
    pub fn of_age(age: f64, config: &SystemConfig) -> Phase {
        let h = &config.hazard;
        if age < h.th1 {
            Phase::BurnIn
        } else if age < h.wearout_onset() {
            Phase::Useful
        } else {
            Phase::WearOut
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Phase::BurnIn => "burn_in",
            Phase::Useful => "useful",
            Phase::WearOut => "wear_out",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Composition {
    Parallel,
    Single,
}

/// Named instants of the timeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Marker {
    /// Wear-out onset of the mains.
    T0,
    /// First main failure; the spare is installed.
    Tf1,
    /// Second main failure: both mains gone (`T1`).
    T1,
    /// End of the spare's burn-in as counted from `T1`.
    T2,
    /// End of system life.
    Tdt,
}

impl Marker {
    pub fn as_str(self) -> &'static str {
        match self {
            Marker::T0 => "T0",
            Marker::Tf1 => "Tf1",
            Marker::T1 => "T1",
            Marker::T2 => "T2",
            Marker::Tdt => "Tdt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActiveUnit {
    pub id: UnitId,
    /// Phase at the segment midpoint.
    pub phase: Phase,
    pub age_at_start: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioSegment {
    pub t_start: f64,
    pub t_end: f64,
    pub units: Vec<ActiveUnit>,
    pub composition: Composition,
    pub end_markers: Vec<Marker>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Boundaries {
    pub t0: f64,
    pub tf1: f64,
    pub tf2: f64,
    pub t2: f64,
    pub tdt: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct UnitPlan {
    id: UnitId,
    slot: Slot,
    service_start: f64,
    lab_credit: f64,
    stagger: f64,
    fails_at: f64,
}

impl UnitPlan {
    fn alive_at(&self, t: f64) -> bool {
        self.service_start <= t && t < self.fails_at
    }

    fn unit_at(&self, t: f64) -> Unit {
        Unit {
            onjob_age: t - self.service_start,
            lab_burnin_credit: self.lab_credit,
            stagger: self.stagger,
            ..Unit::new(self.id, f64::INFINITY, UnitStatus::Active(self.slot))
        }
    }

    fn hardware_age(&self, t: f64) -> f64 {
        (self.lab_credit + (t - self.service_start) + self.stagger).max(0.0)
    }
}

/// Segments of the deterministic timeline plus what is needed to evaluate
/// the system hazard on it.
#[derive(Debug, Clone)]
pub struct ScenarioTimeline {
    pub segments: Vec<ScenarioSegment>,
    pub boundaries: Boundaries,
    config: SystemConfig,
    plans: Vec<UnitPlan>,
}

/// Builds the replace-on-failure timeline with deterministic lifetimes.
///
/// Both mains start at t = 0 with lifetime `mu` (the lifetime mean).
/// Controller 2 lags controller 1 by `delta` (the lifetime sd), so it fails at
/// `mu + delta`. The spare is installed at the first failure with its lab
/// credit already consumed and lives for the rest of its budget.
pub fn scenario_timeline(config: &SystemConfig) -> Result<ScenarioTimeline> {
    config.validate("system")?;
    let mu = config.lifetime.mean();
    let delta = config.lifetime.sd();
    let h = &config.hazard;
    let t0 = h.wearout_onset();
    if mu < t0 {
        return Err(Error::validation(
            "system.lifetime.mean",
            format!("deterministic lifetime {mu} ends before wear-out onset th1 + th2 = {t0}"),
        ));
    }
    if config.lab_burnin >= mu {
        return Err(Error::validation("system.lab_burnin", "lab burn-in consumes the whole lifetime"));
    }
    let tf1 = mu;
    let tf2 = mu + delta;
    let spare_end = tf1 + mu - config.lab_burnin;
    let plans = vec![
        UnitPlan { id: UnitId::Controller1, slot: Slot(0), service_start: 0.0, lab_credit: 0.0, stagger: 0.0, fails_at: tf1 },
        UnitPlan { id: UnitId::Controller2, slot: Slot(1), service_start: 0.0, lab_credit: 0.0, stagger: -delta, fails_at: tf2 },
        UnitPlan {
            id: UnitId::Controller3,
            slot: Slot(0),
            service_start: tf1,
            lab_credit: config.lab_burnin,
            stagger: 0.0,
            fails_at: spare_end,
        },
    ];
    let tdt = tf2.max(spare_end);
    let t2 = tf2 + (h.th1 - config.lab_burnin).max(0.0);
    let boundaries = Boundaries { t0, tf1, tf2, t2, tdt };

    let named = [(t0, Marker::T0), (tf1, Marker::Tf1), (tf2, Marker::T1), (t2, Marker::T2), (tdt, Marker::Tdt)];
    let mut cuts: Vec<f64> = named.iter().map(|&(t, _)| t).filter(|&t| t > 0.0 && t <= tdt).collect();
    cuts.push(0.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let segments = cuts
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let mid = 0.5 * (a + b);
            let units: Vec<ActiveUnit> = plans
                .iter()
                .filter(|p| p.alive_at(mid))
                .map(|p| {
                    ActiveUnit {
                        id: p.id,
                        phase: Phase::of_age(p.hardware_age(mid), config),
                        age_at_start: p.hardware_age(a),
                    }
                })
                .collect();
            let composition = if units.len() > 1 { Composition::Parallel } else { Composition::Single };
            let end_markers = named.iter().filter(|&&(t, _)| t == b).map(|&(_, m)| m).collect();
            ScenarioSegment { t_start: a, t_end: b, units, composition, end_markers }
        })
        .collect();

    Ok(ScenarioTimeline { segments, boundaries, config: config.clone(), plans })
}

impl ScenarioTimeline {
    pub fn config(&self) -> &SystemConfig {
        &self.config
    }

    pub fn segment_at(&self, t: f64) -> Option<&ScenarioSegment> {
        self.segments.iter().find(|s| s.t_start <= t && t < s.t_end)
    }

    /// Window in which the red zone is sought: from the mains' wear-out onset
    /// to the end of the spare's burn-in, cut short where the spare itself
    /// would start to wear out.
    pub fn red_zone_window(&self) -> (f64, f64) {
        let h = &self.config.hazard;
        let spare_wearout = self.boundaries.tf1 + h.wearout_onset() - self.config.lab_burnin;
        let end = self.boundaries.t2.min(spare_wearout).min(self.boundaries.tdt);
        (self.boundaries.t0, end)
    }

    /// Composed system hazard at calendar time `t`.
    pub fn system_hazard(&self, t: f64) -> Result<f64> {
        let cfg = &self.config;
        let sw = cfg.software.as_ref();
        let op = cfg.operator_rate();
        let mut rates = Vec::with_capacity(2);
        for p in self.plans.iter().filter(|p| p.alive_at(t)) {
            let h = unit_hazard(&p.unit_at(t), t, cfg)?;
            let mut cum = cfg.hazard.cumulative(p.hardware_age(t))? - cfg.hazard.cumulative(p.hardware_age(p.service_start))?;
            if let Some(sw) = sw {
                cum += sw.cumulative(t)? - sw.cumulative(p.service_start)?;
            }
            cum += op * (t - p.service_start);
            rates.push(UnitRate::new(h, cum));
        }
        compose_parallel(&rates)
    }
}

/// One sample of a hazard curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub t: f64,
    pub h: f64,
}

/// Samples the composed system hazard on `t = 0, dt, 2 dt, ...` up to the end
/// of system life. Grid points are evaluated in parallel and returned in order.
pub fn system_hazard_curve(timeline: &ScenarioTimeline, dt: f64) -> Result<Vec<CurvePoint>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Domain(format!("grid step must be > 0, got {dt}")));
    }
    let end = timeline.boundaries.tdt;
    let n = (end / dt).ceil() as usize;
    (0..n)
        .into_par_iter()
        .map(|i| i as f64 * dt)
        .filter(|&t| t < end)
        .map(|t| timeline.system_hazard(t).map(|h| CurvePoint { t, h }))
        .collect()
}
