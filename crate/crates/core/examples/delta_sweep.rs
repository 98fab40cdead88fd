//! Red-zone detection across lifetime spreads relative to the wear-out span.

use redzone::analysis::delta_sweep;
use redzone::maintenance::Policy;
use redzone::montecarlo::SimConfig;
use redzone::system::SystemConfig;

fn main() -> redzone::Result<()> {
    let system = SystemConfig::default();
    let th3 = system.hazard.th3;
    let deltas: Vec<f64> = [0.1, 0.5, 1.0, 2.0, 4.0].iter().map(|r| r * th3).collect();
    let sim = SimConfig { replications: 1000, master_seed: 6, ..SimConfig::default() };
    println!("{:>8} {:>8} {:>10} {:>9} {:>9}", "delta", "d/th3", "predicted", "detected", "severity");
    for row in delta_sweep(&system, &deltas, &Policy::Type1, &sim)? {
        println!(
            "{:>8} {:>8} {:>10} {:>9} {:>9.2}",
            row.delta,
            row.delta_over_th3,
            row.predicted,
            row.detected,
            row.severity.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
