use std::path::{Path, PathBuf};

use super::config::{PolicyKind, RunConfig};
use super::output::{num, opt, write_json, CompareReport, Csv, EnsembleSummary, SimulateSummary};
use super::{CompareArgs, EnsembleArgs, HazardArgs, IoArgs, RedzoneArgs, ScenarioArgs, SimulateArgs};
use crate::analysis::{compare_policies, delta_sweep, scenario_red_zone};
use crate::error::{Error, Result};
use crate::montecarlo::{simulate_ensemble, SimConfig};
use crate::system::{scenario_timeline, system_hazard_curve};

fn load(io: &IoArgs) -> Result<RunConfig> {
    let cfg = match &io.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    for w in cfg.system.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(cfg)
}

fn positive(flag: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::validation(flag, format!("must be finite and > 0, got {v}")))
    }
}

fn sim_config(cfg: &RunConfig, args: &EnsembleArgs) -> Result<SimConfig> {
    let mut sim = cfg.simulation.clone();
    if let Some(s) = args.seed {
        sim.master_seed = s;
    }
    if let Some(n) = args.replications {
        sim.replications = n;
    }
    if args.threads.is_some() {
        sim.threads = args.threads;
    }
    sim.validate("simulation")?;
    Ok(sim)
}

/// Writes `t_weeks,h_hardware,h_software,h_operate,h_system`.
pub fn cmd_hazard(args: &HazardArgs) -> Result<()> {
    let cfg = load(&args.io)?;
    let hw = &cfg.system.hazard;
    let sw = cfg.system.software_model();
    let op = cfg.system.operator_rate();
    let dt = positive("--dt", args.dt)?;
    let t_max = positive("--t-max", args.t_max.unwrap_or(hw.th1 + hw.th2 + hw.th3))?;
    let n = (t_max / dt + 1e-9).floor() as usize;
    let mut csv = Csv::new(&["t_weeks", "h_hardware", "h_software", "h_operate", "h_system"]);
    for i in 0..=n {
        let t = i as f64 * dt;
        let h_hw = hw.hazard(t)?;
        let h_sw = sw.hazard(t)?;
        csv.push([num(t), num(h_hw), num(h_sw), num(op), num(h_hw + h_sw + op)]);
    }
    csv.write(&args.io.out)
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

/// Writes the segment table to `--out` and the composed curve to
/// `<stem>_curve.csv` next to it.
pub fn cmd_scenario(args: &ScenarioArgs) -> Result<()> {
    let cfg = load(&args.io)?;
    if args.policy.unwrap_or(cfg.policy.kind) != PolicyKind::Type1 {
        return Err(Error::Config("the deterministic scenario models the type1 policy only".into()));
    }
    let dt = positive("--dt", args.dt.unwrap_or(cfg.analysis.scenario_dt))?;
    let k = cfg.simulation.red_zone_threshold;
    let timeline = scenario_timeline(&cfg.system)?;
    let red_zone = scenario_red_zone(&timeline, dt, k)?;
    let inside = |a: f64, b: f64| red_zone.is_some_and(|r| a < r.end && r.start < b);

    let mut segments = Csv::new(&["t_start", "t_end", "units", "phases", "composition", "end_markers", "red_zone"]);
    for s in &timeline.segments {
        let join = |f: &dyn Fn(usize) -> String| (0..s.units.len()).map(f).collect::<Vec<_>>().join(";");
        segments.push([
            num(s.t_start),
            num(s.t_end),
            join(&|i| s.units[i].id.to_string()),
            join(&|i| s.units[i].phase.as_str().to_string()),
            format!("{:?}", s.composition).to_lowercase(),
            s.end_markers.iter().map(|m| m.as_str()).collect::<Vec<_>>().join(";"),
            inside(s.t_start, s.t_end).to_string(),
        ]);
    }
    segments.write(&args.io.out)?;

    let t_max = args.t_max.map(|t| positive("--t-max", t)).transpose()?.unwrap_or(f64::INFINITY);
    let mut curve = Csv::new(&["t_weeks", "h_system", "red_zone"]);
    for p in system_hazard_curve(&timeline, dt)?.into_iter().filter(|p| p.t <= t_max) {
        let flag = red_zone.is_some_and(|r| p.t >= r.start && p.t < r.end);
        curve.push([num(p.t), num(p.h), u8::from(flag).to_string()]);
    }
    curve.write(&sibling(&args.io.out, "_curve.csv"))?;
    match red_zone {
        Some(r) => println!("red zone [{}, {}) severity {:.3}", r.start, r.end, r.severity),
        None => println!("no red zone"),
    }
    Ok(())
}

/// Writes the ensemble summary JSON and, with `--events`, every event.
pub fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    let cfg = load(&args.io)?;
    let policy = cfg.policy.resolve(args.policy.unwrap_or(cfg.policy.kind))?;
    let sim = sim_config(&cfg, &args.ensemble)?;
    let ensemble = simulate_ensemble(&cfg.system, &policy, &sim)?;
    let summary = SimulateSummary {
        schema_version: cfg.schema_version,
        seed: sim.master_seed,
        ensemble: EnsembleSummary::from(&ensemble.metrics),
    };
    write_json(&args.io.out, &summary)?;
    if let Some(path) = &args.events {
        let mut csv = Csv::new(&["replication", "time_weeks", "kind", "unit", "slot", "unit_out"]);
        for (i, trace) in ensemble.traces.iter().enumerate() {
            for e in &trace.events {
                csv.push([
                    i.to_string(),
                    num(e.time),
                    e.kind.as_str().to_string(),
                    e.unit.map(|u| u.to_string()).unwrap_or_default(),
                    e.slot.map(|s| s.to_string()).unwrap_or_default(),
                    e.unit_out.map(|u| u.to_string()).unwrap_or_default(),
                ]);
            }
        }
        csv.write(path)?;
    }
    Ok(())
}

/// Writes the type1 against type2 comparison JSON.
pub fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let cfg = load(&args.io)?;
    let period = cfg
        .policy
        .rotation_period
        .ok_or_else(|| Error::validation("policy.rotation_period", "required to compare against the type2 policy"))?;
    let sim = sim_config(&cfg, &args.ensemble)?;
    let report = compare_policies(&cfg.system, period, &sim)?;
    write_json(&args.io.out, &CompareReport::new(cfg.schema_version, sim.master_seed, period, &report))
}

/// Writes one CSV row per swept lifetime spread.
pub fn cmd_redzone(args: &RedzoneArgs) -> Result<()> {
    let cfg = load(&args.io)?;
    let policy = cfg.policy.resolve(args.policy.unwrap_or(cfg.policy.kind))?;
    let sim = sim_config(&cfg, &args.ensemble)?;
    let th3 = cfg.system.hazard.th3;
    let deltas: Vec<f64> = cfg.analysis.sweep_delta_ratios.iter().map(|r| r * th3).collect();
    let rows = delta_sweep(&cfg.system, &deltas, &policy, &sim)?;
    let mut csv = Csv::new(&[
        "delta_weeks",
        "delta_over_th3",
        "predicted",
        "detected",
        "severity",
        "red_zone_start",
        "red_zone_end",
        "trdd_mean_weeks",
        "tdt_mean_weeks",
    ]);
    for r in &rows {
        csv.push([
            num(r.delta),
            num(r.delta_over_th3),
            r.predicted.to_string(),
            r.detected.to_string(),
            opt(r.severity),
            opt(r.red_zone.map(|z| z.start)),
            opt(r.red_zone.map(|z| z.end)),
            opt(r.trdd_mean),
            opt(r.tdt_mean),
        ]);
    }
    csv.write(&args.io.out)
}
