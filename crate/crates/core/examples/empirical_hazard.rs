//! Binned system failure rate of a single exponential unit; every bin should
//! sit near the unit's constant rate.

use redzone::hazards::BathtubModel;
use redzone::maintenance::Policy;
use redzone::montecarlo::{empirical_hazard, simulate_ensemble, SimConfig};
use redzone::system::{Architecture, FailureMode, SystemConfig};

fn main() -> redzone::Result<()> {
    let system = SystemConfig {
        hazard: BathtubModel::constant(0.01, 20.0, 180.0, 40.0)?,
        failure_mode: FailureMode::Hazard,
        lab_burnin: 0.0,
        architecture: Architecture { active_slots: 1, spares: 0 },
        ..SystemConfig::default()
    };
    let sim = SimConfig { replications: 20_000, master_seed: 7, horizon: Some(2000.0), ..SimConfig::default() };
    let ensemble = simulate_ensemble(&system, &Policy::Type1, &sim)?;
    println!("{:>6} {:>6} {:>7} {:>10} {:>10}", "start", "end", "deaths", "rate", "std_err");
    for bin in empirical_hazard(&ensemble.traces, 20.0)?.iter().take(15) {
        println!("{:>6} {:>6} {:>7} {:>10.5} {:>10.5}", bin.start, bin.end, bin.deaths, bin.rate, bin.std_error);
    }
    Ok(())
}
