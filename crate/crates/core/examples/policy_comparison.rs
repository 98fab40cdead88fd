//! Replace-on-failure against periodic rotation through the shelf spare.

use redzone::analysis::compare_policies;
use redzone::maintenance::Policy;
use redzone::montecarlo::SimConfig;
use redzone::system::SystemConfig;

fn main() -> redzone::Result<()> {
    let system = SystemConfig::default();
    let period = Policy::type2_default(system.lifetime.mean()).rotation_period().unwrap_or(0.0);
    let sim = SimConfig { replications: 2000, ..SimConfig::default() };
    let report = compare_policies(&system, period, &sim)?;
    for m in [&report.metrics_type1, &report.metrics_type2] {
        let mean = |s: Option<redzone::montecarlo::Summary>| s.map_or(f64::NAN, |s| s.mean);
        println!(
            "{:<6} Trdd {:>8.2}  Tdt {:>8.2}  DP {:>8.2}  Tdr {:>8.2}",
            m.policy,
            mean(m.trdd),
            mean(m.tdt),
            mean(m.dp),
            mean(m.tdr)
        );
    }
    println!("rotation period {period:.2} weeks, redundant-life extension {:?}", report.extension_ratio);
    Ok(())
}
