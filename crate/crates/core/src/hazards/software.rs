//! Embedded-software and operator contributions to a unit's failure rate.

use serde::{Deserialize, Serialize};

use super::weibull::check_time;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpgradeKind {
    /// Release update: adds a decaying stress pulse on top of the current rate.
    Minor,
    /// New release: restarts the decaying update term as a fresh burn-in.
    Major,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpgradeEvent {
    /// Calendar time of the upgrade, weeks.
    pub time: f64,
    pub kind: UpgradeKind,
    #[serde(default)]
    pub pulse_amplitude: f64,
    #[serde(default)]
    pub pulse_decay_tau: f64,
}

/// Software failure rate over calendar time.
///
/// `floor + update_amplitude * exp(-s / update_decay_tau) + pulses`, where
/// `s` is the time since the most recent major upgrade (or since 0), and each
/// minor upgrade at `t_e` adds `pulse_amplitude * exp(-(t - t_e) / pulse_decay_tau)`
/// from `t_e` on. A zero time constant switches its term off.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SoftwareHazardModel {
    pub steady_floor: f64,
    #[serde(default)]
    pub update_amplitude: f64,
    #[serde(default)]
    pub update_decay_tau: f64,
    #[serde(default)]
    pub upgrade_events: Vec<UpgradeEvent>,
}

fn decay(x: f64, tau: f64) -> f64 {
    if tau > 0.0 {
        (-x / tau).exp()
    } else {
        0.0
    }
}

// Integral of exp(-x / tau) over [0, len].
fn decay_integral(len: f64, tau: f64) -> f64 {
    if tau > 0.0 {
        -tau * (-len / tau).exp_m1()
    } else {
        0.0
    }
}

fn non_negative(path: String, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::validation(path, format!("must be finite and >= 0, got {v}")));
    }
    Ok(())
}

impl SoftwareHazardModel {
    pub fn validate(&self, path: &str) -> Result<()> {
        non_negative(format!("{path}.steady_floor"), self.steady_floor)?;
        non_negative(format!("{path}.update_amplitude"), self.update_amplitude)?;
        non_negative(format!("{path}.update_decay_tau"), self.update_decay_tau)?;
        let mut prev = f64::NEG_INFINITY;
        for (i, ev) in self.upgrade_events.iter().enumerate() {
            let p = format!("{path}.upgrade_events[{i}]");
            non_negative(format!("{p}.time"), ev.time)?;
            non_negative(format!("{p}.pulse_amplitude"), ev.pulse_amplitude)?;
            non_negative(format!("{p}.pulse_decay_tau"), ev.pulse_decay_tau)?;
            if ev.time <= prev {
                return Err(Error::validation(
                    format!("{p}.time"),
                    "upgrade events must be sorted by strictly increasing time",
                ));
            }
            prev = ev.time;
        }
        Ok(())
    }

    fn last_major(&self, t: f64) -> f64 {
        self.upgrade_events
            .iter()
            .take_while(|e| e.time <= t)
            .filter(|e| e.kind == UpgradeKind::Major)
            .map(|e| e.time)
            .last()
            .unwrap_or(0.0)
    }

    fn minors(&self, t: f64) -> impl Iterator<Item = &UpgradeEvent> {
        self.upgrade_events
            .iter()
            .take_while(move |e| e.time <= t)
            .filter(|e| e.kind == UpgradeKind::Minor)
    }

    pub fn hazard(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        let since = t - self.last_major(t);
        let pulses: f64 = self
            .minors(t)
            .map(|e| e.pulse_amplitude * decay(t - e.time, e.pulse_decay_tau))
            .sum();
        Ok(self.steady_floor + self.update_amplitude * decay(since, self.update_decay_tau) + pulses)
    }

    /// Integral of [`SoftwareHazardModel::hazard`] over `[0, t]`.
    pub fn cumulative(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        let mut total = self.steady_floor * t;
        let mut start = 0.0;
        for e in self.upgrade_events.iter().take_while(|e| e.time <= t) {
            if e.kind == UpgradeKind::Major {
                total += self.update_amplitude * decay_integral(e.time - start, self.update_decay_tau);
                start = e.time;
            }
        }
        total += self.update_amplitude * decay_integral(t - start, self.update_decay_tau);
        total += self
            .minors(t)
            .map(|e| e.pulse_amplitude * decay_integral(t - e.time, e.pulse_decay_tau))
            .sum::<f64>();
        Ok(total)
    }
}

/// Operator-induced failure rate, constant over time.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorHazard {
    pub rate: f64,
}

impl OperatorHazard {
    pub fn validate(&self, path: &str) -> Result<()> {
        non_negative(format!("{path}.rate"), self.rate)
    }
}

/// Free-function form of [`SoftwareHazardModel::hazard`].
pub fn software_hazard(t: f64, model: &SoftwareHazardModel) -> Result<f64> {
    model.hazard(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SoftwareHazardModel {
        SoftwareHazardModel {
            steady_floor: 0.001,
            update_amplitude: 0.004,
            update_decay_tau: 26.0,
            upgrade_events: vec![],
        }
    }

    #[test]
    fn starts_at_floor_plus_amplitude_and_settles_on_floor() {
        let m = base();
        assert!((m.hazard(0.0).unwrap() - 0.005).abs() < 1e-15);
        assert!((m.hazard(1e4).unwrap() - 0.001).abs() < 1e-15);
        assert!(m.hazard(1e4).unwrap() >= m.steady_floor);
    }

    #[test]
    fn minor_upgrade_superposes_a_pulse() {
        let mut m = base();
        m.upgrade_events.push(UpgradeEvent {
            time: 52.0,
            kind: UpgradeKind::Minor,
            pulse_amplitude: 0.002,
            pulse_decay_tau: 4.0,
        });
        let before = m.hazard(52.0 - 1e-9).unwrap();
        let after = m.hazard(52.0).unwrap();
        assert!((after - (before + 0.002)).abs() < 1e-12);
    }

    #[test]
    fn major_upgrade_restarts_the_decay() {
        let mut m = base();
        m.upgrade_events.push(UpgradeEvent {
            time: 100.0,
            kind: UpgradeKind::Major,
            pulse_amplitude: 0.0,
            pulse_decay_tau: 0.0,
        });
        assert!((m.hazard(100.0).unwrap() - m.hazard(0.0).unwrap()).abs() < 1e-15);
        assert!((m.hazard(110.0).unwrap() - m.hazard(10.0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn cumulative_matches_midpoint_rule() {
        let m = SoftwareHazardModel {
            upgrade_events: vec![
                UpgradeEvent { time: 30.0, kind: UpgradeKind::Minor, pulse_amplitude: 0.003, pulse_decay_tau: 5.0 },
                UpgradeEvent { time: 60.0, kind: UpgradeKind::Major, pulse_amplitude: 0.0, pulse_decay_tau: 0.0 },
                UpgradeEvent { time: 70.0, kind: UpgradeKind::Minor, pulse_amplitude: 0.001, pulse_decay_tau: 0.0 },
            ],
            ..base()
        };
        let t = 120.0;
        let n = 240_000;
        let h = t / n as f64;
        let quad: f64 = (0..n).map(|i| m.hazard((i as f64 + 0.5) * h).unwrap() * h).sum();
        let closed = m.cumulative(t).unwrap();
        assert!(((quad - closed) / closed).abs() < 1e-6, "{quad} {closed}");
    }

    #[test]
    fn rejects_unsorted_events() {
        let mut m = base();
        for time in [10.0, 10.0] {
            m.upgrade_events.push(UpgradeEvent { time, kind: UpgradeKind::Minor, pulse_amplitude: 0.0, pulse_decay_tau: 0.0 });
        }
        let err = m.validate("system.software").unwrap_err().to_string();
        assert!(err.contains("upgrade_events[1].time"), "{err}");
        assert!(OperatorHazard { rate: -1.0 }.validate("op").is_err());
    }
}
