use rayon::prelude::*;
use serde::Serialize;

use super::engine::{run_replication, SimConfig};
use super::estimate::{empirical_hazard, HazardBin};
use super::seed::derive_seed;
use super::trace::Trace;
use crate::analysis::{detect_red_zone, RedZone};
use crate::error::{Error, Result};
use crate::maintenance::Policy;
use crate::system::{CurvePoint, FailureMode, SystemConfig};

/// Mean, sample standard deviation and normal 95% interval of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub ci95: [f64; 2],
}

impl Summary {
    pub fn of(values: &[f64]) -> Option<Summary> {
        let n = values.len();
        if n == 0 {
            return None;
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        let half = 1.96 * std / (n as f64).sqrt();
        Some(Summary { n, mean, std, ci95: [mean - half, mean + half] })
    }

    pub fn std_error(&self) -> f64 {
        self.std / (self.n as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReplicationMetrics {
    pub index: usize,
    pub seed: u64,
    pub trdd: Option<f64>,
    pub tdt: Option<f64>,
    pub dp: Option<f64>,
    pub tdr: Option<f64>,
    pub censored: bool,
}

/// Ensemble results. Summaries cover uncensored replications only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metrics {
    pub policy: &'static str,
    pub replications: usize,
    pub censored_count: usize,
    /// False when every replication was censored.
    pub usable: bool,
    pub trdd: Option<Summary>,
    pub tdt: Option<Summary>,
    pub dp: Option<Summary>,
    pub tdr: Option<Summary>,
    pub per_replication: Vec<ReplicationMetrics>,
    /// Ensemble system failure rate; see [`ensemble_hazard_curve`].
    pub hazard_curve: Vec<CurvePoint>,
    /// Search window `[th1 + th2, 2 (th1 + th2) - lab_burnin)`.
    pub red_zone_window: [f64; 2],
    pub red_zone_baseline: f64,
    /// Peak of the curve over the baseline inside the window.
    pub red_zone_severity: Option<f64>,
    pub red_zone: Option<RedZone>,
    pub empirical_hazard: Vec<HazardBin>,
}

/// Traces in replication order together with their metrics.
#[derive(Debug, Clone)]
pub struct Ensemble {
    pub traces: Vec<Trace>,
    pub metrics: Metrics,
}

/// Ensemble system failure rate on the grid `0, dt, 2 dt, ...`.
///
/// At each grid time the value is the mean, over replications still alive,
/// of the system's instantaneous failure rate: zero while redundant or while
/// the shelf can still restore redundancy, and the bathtub rate of the last
/// unit at its effective age otherwise. Except in `hazard` mode the bathtub
/// wear-out term is left out, because the lognormal budget already carries
/// end of life.
pub fn ensemble_hazard_curve(traces: &[Trace], system: &SystemConfig, dt: f64) -> Vec<CurvePoint> {
    let last = traces.iter().map(|t| t.end_time).fold(0.0, f64::max);
    let npts = (last / dt).ceil() as usize;
    let mut alive = vec![0u64; npts + 1];
    let mut total = vec![0.0f64; npts];
    let rate = |age: f64| match system.failure_mode {
        FailureMode::Hazard => system.hazard.hazard_unchecked(age, true),
        FailureMode::Wearout | FailureMode::Competing => system.hazard.hazard_unchecked(age, false),
    };
    for trace in traces {
        let n_alive = ((trace.end_time / dt).ceil() as usize).min(npts);
        alive[n_alive] += 1;
        for span in &trace.solo_spans {
            let first = (span.start / dt).ceil() as usize;
            for (j, slot) in total.iter_mut().enumerate().take(n_alive).skip(first) {
                let t = j as f64 * dt;
                if t < span.end {
                    *slot += rate(span.age_at_start + (t - span.start));
                }
            }
        }
    }
    // alive[k] counts traces alive on exactly the first k grid points.
    let mut remaining = traces.len() as u64;
    let mut out = Vec::with_capacity(npts);
    for (j, sum) in total.into_iter().enumerate() {
        remaining -= alive[j];
        if remaining == 0 {
            break;
        }
        out.push(CurvePoint { t: j as f64 * dt, h: sum / remaining as f64 });
    }
    out
}

fn run_all(system: &SystemConfig, policy: &Policy, sim: &SimConfig) -> Result<Vec<Trace>> {
    let job = || {
        (0..sim.replications)
            .into_par_iter()
            .map(|i| run_replication(system, policy, sim, derive_seed(sim.master_seed, i as u64)))
            .collect::<Result<Vec<_>>>()
    };
    match sim.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::State(format!("thread pool: {e}")))?
            .install(job),
        None => job(),
    }
}

/// Runs the ensemble and keeps every trace.
pub fn simulate_ensemble(system: &SystemConfig, policy: &Policy, sim: &SimConfig) -> Result<Ensemble> {
    system.validate("system")?;
    policy.validate("policy")?;
    sim.validate("simulation")?;
    let traces = run_all(system, policy, sim)?;

    let per_replication: Vec<ReplicationMetrics> = traces
        .iter()
        .enumerate()
        .map(|(index, t)| ReplicationMetrics {
            index,
            seed: t.seed,
            trdd: if t.censored { None } else { t.trdd },
            tdt: t.tdt,
            dp: t.dp.map(|d| d.time),
            tdr: t.tdr(),
            censored: t.censored,
        })
        .collect();
    let censored_count = per_replication.iter().filter(|r| r.censored).count();
    let usable = censored_count < traces.len();
    let collect = |f: fn(&ReplicationMetrics) -> Option<f64>| {
        let v: Vec<f64> = per_replication.iter().filter(|r| !r.censored).filter_map(f).collect();
        Summary::of(&v)
    };

    let hazard_curve = ensemble_hazard_curve(&traces, system, sim.curve_dt);
    let t0 = system.hazard.wearout_onset();
    let window = [t0, 2.0 * t0 - system.lab_burnin];
    let baseline = system.hazard.useful_rate;
    let in_window: Vec<CurvePoint> =
        hazard_curve.iter().copied().filter(|p| p.t >= window[0] && p.t < window[1]).collect();
    let (red_zone_severity, red_zone) = if baseline > 0.0 && !in_window.is_empty() {
        let peak = in_window.iter().map(|p| p.h).fold(f64::NEG_INFINITY, f64::max);
        (Some(peak / baseline), detect_red_zone(&in_window, baseline, sim.red_zone_threshold)?)
    } else {
        (None, None)
    };
    let empirical_hazard = if usable { empirical_hazard(&traces, sim.bin_width)? } else { Vec::new() };

    let metrics = Metrics {
        policy: policy.name(),
        replications: traces.len(),
        censored_count,
        usable,
        trdd: collect(|r| r.trdd),
        tdt: collect(|r| r.tdt),
        dp: collect(|r| r.dp),
        tdr: collect(|r| r.tdr),
        per_replication,
        hazard_curve,
        red_zone_window: window,
        red_zone_baseline: baseline,
        red_zone_severity,
        red_zone,
        empirical_hazard,
    };
    Ok(Ensemble { traces, metrics })
}

/// Runs `sim.replications` replications seeded by [`derive_seed`] and
/// aggregates them in replication order, whatever the thread count.
pub fn run_ensemble(system: &SystemConfig, policy: &Policy, sim: &SimConfig) -> Result<Metrics> {
    Ok(simulate_ensemble(system, policy, sim)?.metrics)
}
