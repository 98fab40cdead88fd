use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::seed::uniform_open;
use super::trace::{Event, EventKind, FailureRecord, SoloSpan, Trace};
use crate::error::{Error, Result};
use crate::maintenance::{decision_point, is_rotation_epoch, plan_type1, plan_type2, MaintenanceAction, PlantState, Policy, UnitView};
use crate::system::{FailureMode, Slot, SystemConfig, Unit, UnitId, UnitStatus};

/// Ensemble and estimator settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimConfig {
    pub replications: usize,
    pub master_seed: u64,
    /// Censoring horizon in weeks; `None` means five mean unit lifetimes.
    pub horizon: Option<f64>,
    /// Tolerance for the lifetime-budget check at each failure.
    pub dt_event: f64,
    /// Bin width of the empirical system hazard.
    pub bin_width: f64,
    /// Grid spacing of the ensemble hazard curve.
    pub curve_dt: f64,
    /// Worker threads; `None` uses the global pool. Results do not depend on it.
    pub threads: Option<usize>,
    /// Red-zone detection multiplier `k` over the useful-life baseline.
    pub red_zone_threshold: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            replications: 1000,
            master_seed: 42,
            horizon: None,
            dt_event: 1e-6,
            bin_width: 5.0,
            curve_dt: 1.0,
            threads: None,
            red_zone_threshold: 2.0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self, path: &str) -> Result<()> {
        if self.replications < 1 {
            return Err(Error::validation(format!("{path}.replications"), "must be >= 1"));
        }
        if let Some(h) = self.horizon {
            if !h.is_finite() || h <= 0.0 {
                return Err(Error::validation(format!("{path}.horizon"), format!("must be finite and > 0, got {h}")));
            }
        }
        for (name, v) in [("dt_event", self.dt_event), ("bin_width", self.bin_width), ("curve_dt", self.curve_dt)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::validation(format!("{path}.{name}"), format!("must be finite and > 0, got {v}")));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::validation(format!("{path}.threads"), "must be >= 1"));
        }
        if !self.red_zone_threshold.is_finite() || self.red_zone_threshold <= 1.0 {
            return Err(Error::validation(
                format!("{path}.red_zone_threshold"),
                format!("must be > 1, got {}", self.red_zone_threshold),
            ));
        }
        Ok(())
    }

    pub fn horizon_for(&self, system: &SystemConfig) -> f64 {
        self.horizon.unwrap_or(5.0 * system.lifetime.mean())
    }
}

/// Lifetime budget of one unit in effective-age weeks.
///
/// `initial_age` is the age the unit already carries (lab burn-in), so the
/// hazard-driven draw is conditional on survival to that age.
fn draw_lifetime(system: &SystemConfig, u_wear: f64, u_random: f64, initial_age: f64) -> Result<f64> {
    let wear = system.lifetime.sample(u_wear)?;
    let random = |with_wearout: bool| {
        let h0 = system.hazard.cumulative_unchecked(initial_age, with_wearout);
        system.hazard.age_at_cumulative(h0 - u_random.ln(), initial_age, with_wearout)
    };
    Ok(match system.failure_mode {
        FailureMode::Wearout => wear,
        FailureMode::Hazard => random(true),
        FailureMode::Competing => wear.min(random(false)),
    })
}

struct Plant<'a> {
    system: &'a SystemConfig,
    units: Vec<Unit>,
    t: f64,
}

impl Plant<'_> {
    fn age(&self, i: usize) -> f64 {
        self.units[i].effective_age(self.system.shelf_aging_factor)
    }

    fn failure_time(&self, i: usize) -> f64 {
        let u = &self.units[i];
        let remaining = u.lifetime - self.age(i);
        match u.status {
            UnitStatus::Failed => f64::INFINITY,
            _ if remaining <= 0.0 => self.t,
            UnitStatus::Active(_) => self.t + remaining,
            UnitStatus::OnShelf if self.system.shelf_aging_factor > 0.0 => {
                self.t + remaining / self.system.shelf_aging_factor
            }
            UnitStatus::OnShelf => f64::INFINITY,
        }
    }

    fn advance(&mut self, to: f64) {
        let dt = to - self.t;
        for u in &mut self.units {
            match u.status {
                UnitStatus::Active(_) => u.onjob_age += dt,
                UnitStatus::OnShelf => u.shelf_age += dt,
                UnitStatus::Failed => {}
            }
        }
        self.t = to;
    }

    fn index_of(&self, id: UnitId) -> usize {
        self.units.iter().position(|u| u.id == id).expect("unit id present")
    }

    fn state(&self) -> PlantState {
        let mut slots = vec![None; self.system.architecture.active_slots];
        let mut shelf = None;
        for (i, u) in self.units.iter().enumerate() {
            let view = UnitView { unit: u.id, effective_age: self.age(i) };
            match u.status {
                UnitStatus::Active(Slot(s)) => slots[s] = Some(view),
                UnitStatus::OnShelf => shelf = Some(view),
                UnitStatus::Failed => {}
            }
        }
        PlantState { time: self.t, slots, shelf }
    }

    fn apply(&mut self, action: &MaintenanceAction) {
        let incoming = self.index_of(action.unit_in);
        let outgoing = self.index_of(action.unit_out);
        if self.units[outgoing].status != UnitStatus::Failed {
            self.units[outgoing].status = UnitStatus::OnShelf;
        }
        self.units[incoming].status = UnitStatus::Active(action.slot);
    }

    fn alive_in_slots(&self) -> usize {
        self.units.iter().filter(|u| u.is_active()).count()
    }

    fn shelf_alive(&self) -> bool {
        self.units.iter().any(|u| u.status == UnitStatus::OnShelf)
    }

    fn solo_unit(&self) -> Option<usize> {
        if self.alive_in_slots() == 1 && !self.shelf_alive() {
            self.units.iter().position(|u| u.is_active())
        } else {
            None
        }
    }
}

/// Simulates one system life with its own generator seeded by `seed`.
///
/// Each unit draws two uniforms in unit order: one for the lognormal
/// lifetime and one for the hazard-driven failure. A unit fails when its
/// effective age reaches its budget. At equal times failures come first (in
/// slot order, then the shelf), then replacements, then a rotation.
pub fn run_replication(system: &SystemConfig, policy: &Policy, sim: &SimConfig, seed: u64) -> Result<Trace> {
    let arch = system.architecture;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut units = Vec::with_capacity(arch.unit_count());
    for (i, &id) in UnitId::ALL[..arch.unit_count()].iter().enumerate() {
        let u_wear = uniform_open(&mut rng);
        let u_random = uniform_open(&mut rng);
        let spare = i >= arch.active_slots;
        let credit = if spare { system.lab_burnin } else { 0.0 };
        let lifetime = draw_lifetime(system, u_wear, u_random, credit)?;
        let status = if spare { UnitStatus::OnShelf } else { UnitStatus::Active(Slot(i)) };
        units.push(Unit { lab_burnin_credit: credit, ..Unit::new(id, lifetime, status) });
    }
    let lifetimes = units.iter().map(|u| u.lifetime).collect();
    let mut plant = Plant { system, units, t: 0.0 };

    let horizon = sim.horizon_for(system);
    let period = policy.rotation_period();
    let mut epoch = 1.0;
    let mut rotating = period.is_some();

    let mut events = Vec::new();
    let mut failures = Vec::new();
    let mut solo_spans = Vec::new();
    let mut open_solo: Option<SoloSpan> = None;
    let mut trdd = None;
    let mut tdt = None;
    let mut censored = false;

    let mut first = true;
    loop {
        if !first {
            let mut t_next = (0..plant.units.len()).map(|i| plant.failure_time(i)).fold(f64::INFINITY, f64::min);
            if let (true, Some(p)) = (rotating, period) {
                t_next = t_next.min(epoch * p);
            }
            if t_next > horizon {
                plant.advance(horizon);
                censored = true;
                break;
            }
            plant.advance(t_next);
        }
        first = false;
        let t = plant.t;
        let tol = 1e-9 * t.max(1.0);

        let mut failing: Vec<(usize, Option<Slot>)> = plant
            .units
            .iter()
            .enumerate()
            .filter(|(i, u)| u.status != UnitStatus::Failed && u.lifetime - plant.age(*i) <= tol)
            .map(|(i, u)| (i, if let UnitStatus::Active(s) = u.status { Some(s) } else { None }))
            .collect();
        failing.sort_by_key(|&(i, slot)| (slot.map_or(usize::MAX, |s| s.0), i));
        let mut vacated = Vec::new();
        for &(i, slot) in &failing {
            let u = &plant.units[i];
            failures.push(FailureRecord {
                unit: u.id,
                time: t,
                effective_age: plant.age(i),
                onjob_age: u.onjob_age,
                lifetime: u.lifetime,
            });
            events.push(Event { time: t, kind: EventKind::Failure, unit: Some(u.id), slot, unit_out: None });
            if let Some(s) = slot {
                vacated.push((s, u.id));
            }
            plant.units[i].status = UnitStatus::Failed;
        }
        for failed in vacated {
            if let Some(action) = plan_type1(&plant.state(), Some(failed)) {
                plant.apply(&action);
                events.push(Event {
                    time: t,
                    kind: EventKind::Replace,
                    unit: Some(action.unit_in),
                    slot: Some(action.slot),
                    unit_out: Some(action.unit_out),
                });
            }
        }
        if let (true, Some(p)) = (rotating, period) {
            if is_rotation_epoch(t, p) && t >= epoch * p - tol {
                if plant.shelf_alive() {
                    if let Some(action) = plan_type2(&plant.state(), p) {
                        plant.apply(&action);
                        events.push(Event {
                            time: t,
                            kind: EventKind::Rotate,
                            unit: Some(action.unit_in),
                            slot: Some(action.slot),
                            unit_out: Some(action.unit_out),
                        });
                    }
                    epoch += 1.0;
                } else {
                    rotating = false;
                }
            }
        }

        let alive = plant.alive_in_slots();
        if trdd.is_none() && alive < 2 {
            trdd = Some(t);
        }
        if open_solo.is_none() {
            if let Some(i) = plant.solo_unit() {
                open_solo = Some(SoloSpan { unit: plant.units[i].id, start: t, end: t, age_at_start: plant.age(i) });
            }
        }
        if alive == 0 {
            tdt = Some(t);
            events.push(Event { time: t, kind: EventKind::SystemDeath, unit: None, slot: None, unit_out: None });
            break;
        }
    }

    let end_time = tdt.unwrap_or(horizon);
    if let Some(mut span) = open_solo {
        span.end = end_time;
        solo_spans.push(span);
    }
    for f in &failures {
        let over = f.effective_age - f.lifetime;
        if -over > sim.dt_event || (over > sim.dt_event && f.time > 0.0) {
            return Err(Error::State(format!(
                "{} failed at effective age {} against a budget of {}",
                f.unit, f.effective_age, f.lifetime
            )));
        }
    }

    let mut trace = Trace {
        seed,
        lifetimes,
        events,
        failures,
        trdd,
        tdt,
        end_time,
        censored,
        dp: None,
        solo_spans,
    };
    trace.dp = decision_point(policy, &trace, system);
    if let Some(dp) = trace.dp.filter(|dp| dp.time <= end_time) {
        let at = trace
            .events
            .iter()
            .position(|e| e.time > dp.time || (e.time == dp.time && e.kind > EventKind::Dp))
            .unwrap_or(trace.events.len());
        trace.events.insert(at, Event { time: dp.time, kind: EventKind::Dp, unit: None, slot: None, unit_out: None });
    }
    if trace.events.windows(2).any(|w| w[1].time < w[0].time) {
        return Err(Error::State("event times are not nondecreasing".into()));
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hazards::{lognormal_from_mean_sd, BathtubModel};

    fn deterministic(mean: f64) -> SystemConfig {
        SystemConfig {
            hazard: BathtubModel::constant(0.0, 20.0, 180.0, 40.0).unwrap(),
            lifetime: lognormal_from_mean_sd(mean, 0.0).unwrap(),
            failure_mode: FailureMode::Wearout,
            lab_burnin: 0.0,
            ..Default::default()
        }
    }

    fn kinds(trace: &Trace) -> Vec<(f64, EventKind, Option<UnitId>)> {
        trace.events.iter().map(|e| (e.time, e.kind, e.unit)).collect()
    }

    #[test]
    fn type1_hand_trace() {
        let trace = run_replication(&deterministic(200.0), &Policy::Type1, &SimConfig::default(), 1).unwrap();
        use EventKind::*;
        use UnitId::*;
        assert_eq!(
            kinds(&trace),
            vec![
                (160.0, Dp, None),
                (200.0, Failure, Some(Controller1)),
                (200.0, Failure, Some(Controller2)),
                (200.0, Replace, Some(Controller3)),
                (400.0, Failure, Some(Controller3)),
                (400.0, SystemDeath, None),
            ]
        );
        assert_eq!(trace.trdd, Some(200.0));
        assert_eq!(trace.tdt, Some(400.0));
        assert_eq!(trace.tdr(), Some(240.0));
        assert_eq!(trace.solo_spans.len(), 1);
        assert_eq!(trace.solo_spans[0].start, 200.0);
        assert_eq!(trace.solo_spans[0].age_at_start, 0.0);
    }

    #[test]
    fn type2_hand_trace_exhausts_near_one_and_a_half_lifetimes() {
        let policy = Policy::type2_default(200.0);
        let trace = run_replication(&deterministic(200.0), &policy, &SimConfig::default(), 1).unwrap();
        assert!((trace.trdd.unwrap() - 300.0).abs() < 1e-6, "{:?}", trace.trdd);
        assert!((trace.tdt.unwrap() - 300.0).abs() < 1e-6);
        // Oracle: hand-traced age accounting with the oldest-out rotation rule.
        use EventKind::*;
        use UnitId::*;
        let p = 200.0 / 6.0;
        let expected = [
            (1.0, Rotate, Controller3),
            (2.0, Rotate, Controller1),
            (3.0, Rotate, Controller2),
            (4.0, Rotate, Controller3),
            (5.0, Rotate, Controller2),
            (6.0, Rotate, Controller1),
            (7.0, Rotate, Controller3),
            (8.0, Failure, Controller2),
            (8.0, Replace, Controller1),
            (8.0, Dp, Controller1),
            (9.0, Failure, Controller3),
            (9.0, Failure, Controller1),
        ];
        let got: Vec<_> = trace.events.iter().filter(|e| e.kind != SystemDeath).collect();
        assert_eq!(got.len(), expected.len());
        for (e, (k, kind, unit)) in got.iter().zip(expected) {
            assert!((e.time - k * p).abs() < 1e-9, "{e:?}");
            assert_eq!(e.kind, kind);
            if kind != Dp {
                assert_eq!(e.unit, Some(unit));
            }
        }
        assert_eq!(trace.dp.unwrap().time, trace.events[8].time);
        assert!((trace.tdr().unwrap() - p).abs() < 1e-9);
        let rotations = trace.events.iter().filter(|e| e.kind == EventKind::Rotate).count();
        assert!(rotations >= 7, "{rotations}");
    }

    #[test]
    fn lab_credit_shortens_the_spare() {
        let sys = SystemConfig { lab_burnin: 2.0, ..deterministic(220.0) };
        let trace = run_replication(&sys, &Policy::Type1, &SimConfig::default(), 1).unwrap();
        assert_eq!(trace.trdd, Some(220.0));
        assert_eq!(trace.tdt, Some(438.0));
    }

    #[test]
    fn censoring_at_horizon() {
        let sim = SimConfig { horizon: Some(100.0), ..Default::default() };
        let trace = run_replication(&deterministic(200.0), &Policy::Type1, &sim, 1).unwrap();
        assert!(trace.censored);
        assert_eq!(trace.tdt, None);
        assert_eq!(trace.trdd, None);
        assert_eq!(trace.end_time, 100.0);
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let sys = SystemConfig::default();
        let a = run_replication(&sys, &Policy::Type1, &SimConfig::default(), 99).unwrap();
        let b = run_replication(&sys, &Policy::Type1, &SimConfig::default(), 99).unwrap();
        assert_eq!(a, b);
    }
}
