//! Red-zone detection, lifetime extension, decision margins and spread
//! sweeps over simulated ensembles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::maintenance::{red_zone_condition, Policy};
use crate::montecarlo::{run_ensemble, Metrics, SimConfig, Summary};
use crate::system::{system_hazard_curve, CurvePoint, ScenarioTimeline, SystemConfig};

/// Interval of critically elevated system failure rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RedZone {
    pub start: f64,
    /// Exclusive end: last exceeding grid point plus one grid step.
    pub end: f64,
    /// Peak rate over the baseline.
    pub severity: f64,
    pub baseline: f64,
}

/// Maximal contiguous run of grid points with `h > k * baseline` that
/// contains the curve's peak, or `None` when the peak does not exceed the
/// threshold. The curve must be sampled on a uniform grid.
pub fn detect_red_zone(curve: &[CurvePoint], baseline: f64, k: f64) -> Result<Option<RedZone>> {
    if curve.is_empty() {
        return Err(Error::Input("red-zone detection needs a non-empty curve".into()));
    }
    if !baseline.is_finite() || baseline <= 0.0 {
        return Err(Error::Input(format!("baseline must be > 0, got {baseline}")));
    }
    if !k.is_finite() || k <= 1.0 {
        return Err(Error::Input(format!("threshold multiplier must be > 1, got {k}")));
    }
    let peak = (0..curve.len()).fold(0, |m, i| if curve[i].h > curve[m].h { i } else { m });
    let level = k * baseline;
    if curve[peak].h <= level {
        return Ok(None);
    }
    let mut lo = peak;
    while lo > 0 && curve[lo - 1].h > level {
        lo -= 1;
    }
    let mut hi = peak;
    while hi + 1 < curve.len() && curve[hi + 1].h > level {
        hi += 1;
    }
    let step = if curve.len() > 1 { curve[1].t - curve[0].t } else { 1.0 };
    Ok(Some(RedZone {
        start: curve[lo].t,
        end: curve[hi].t + step,
        severity: curve[peak].h / baseline,
        baseline,
    }))
}

/// Red zone of the deterministic scenario: the composed hazard on a grid of
/// spacing `dt`, searched inside the timeline's red-zone window against the
/// useful-life rate.
pub fn scenario_red_zone(timeline: &ScenarioTimeline, dt: f64, k: f64) -> Result<Option<RedZone>> {
    let (a, b) = timeline.red_zone_window();
    let window: Vec<CurvePoint> =
        system_hazard_curve(timeline, dt)?.into_iter().filter(|p| p.t >= a && p.t < b).collect();
    if window.is_empty() {
        return Ok(None);
    }
    detect_red_zone(&window, timeline.config().hazard.useful_rate, k)
}

/// Relative gain in redundant lifetime, `(trdd_2 - trdd_1) / trdd_1`.
pub fn lifetime_extension(trdd_1: f64, trdd_2: f64) -> Result<f64> {
    if !trdd_1.is_finite() || trdd_1 <= 0.0 {
        return Err(Error::Input(format!("trdd_1 must be > 0, got {trdd_1}")));
    }
    Ok((trdd_2 - trdd_1) / trdd_1)
}

/// Time left for acting on a decision, `Tdt - DP`; absent without a DP.
pub fn decision_margin(tdt: f64, dp: Option<f64>) -> Option<f64> {
    dp.map(|dp| tdt - dp)
}

/// One row of a lifetime-spread sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub delta: f64,
    pub delta_over_th3: f64,
    /// The existence condition `delta < th3`.
    pub predicted: bool,
    pub detected: bool,
    pub severity: Option<f64>,
    pub red_zone: Option<RedZone>,
    pub trdd_mean: Option<f64>,
    pub tdt_mean: Option<f64>,
}

/// Runs one ensemble per lifetime spread and compares red-zone detection
/// with the existence condition. `deltas` must be positive and sorted.
pub fn delta_sweep(
    template: &SystemConfig,
    deltas: &[f64],
    policy: &Policy,
    sim: &SimConfig,
) -> Result<Vec<SweepRow>> {
    for (i, &d) in deltas.iter().enumerate() {
        if !d.is_finite() || d <= 0.0 {
            return Err(Error::Input(format!("spread values must be > 0, got {d}")));
        }
        if i > 0 && d < deltas[i - 1] {
            return Err(Error::Input("spread values must be sorted ascending".into()));
        }
    }
    let th3 = template.hazard.th3;
    deltas
        .iter()
        .map(|&delta| {
            let metrics = run_ensemble(&template.with_spread(delta)?, policy, sim)?;
            Ok(SweepRow {
                delta,
                delta_over_th3: delta / th3,
                predicted: red_zone_condition(delta, th3)?,
                detected: metrics.red_zone.is_some(),
                severity: metrics.red_zone_severity,
                red_zone: metrics.red_zone,
                trdd_mean: metrics.trdd.map(|s| s.mean),
                tdt_mean: metrics.tdt.map(|s| s.mean),
            })
        })
        .collect()
}

/// Replace-on-failure against rotation from the same master seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub metrics_type1: Metrics,
    pub metrics_type2: Metrics,
    /// `(Trdd_2 - Trdd_1) / Trdd_1` on ensemble means.
    pub extension_ratio: Option<f64>,
    pub tdr_1: Option<Summary>,
    pub tdr_2: Option<Summary>,
}

/// Runs both policies; `rotation_period` parameterises the rotation policy.
pub fn compare_policies(system: &SystemConfig, rotation_period: f64, sim: &SimConfig) -> Result<ComparisonReport> {
    let type2 = Policy::Type2 { rotation_period };
    type2.validate("policy")?;
    let metrics_type1 = run_ensemble(system, &Policy::Type1, sim)?;
    let metrics_type2 = run_ensemble(system, &type2, sim)?;
    let extension_ratio = match (metrics_type1.trdd, metrics_type2.trdd) {
        (Some(a), Some(b)) if a.mean > 0.0 => Some(lifetime_extension(a.mean, b.mean)?),
        _ => None,
    };
    Ok(ComparisonReport {
        tdr_1: metrics_type1.tdr,
        tdr_2: metrics_type2.tdr,
        metrics_type1,
        metrics_type2,
        extension_ratio,
    })
}
