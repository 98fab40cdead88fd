//! Longer lab burn-in of the spare shortens the single-unit stretch at the
//! end of life and lowers the red-zone severity.

use redzone::maintenance::Policy;
use redzone::montecarlo::{run_ensemble, SimConfig};
use redzone::system::SystemConfig;

fn main() -> redzone::Result<()> {
    let sim = SimConfig { replications: 1000, ..SimConfig::default() };
    println!("{:>10} {:>9} {:>9}", "lab_weeks", "severity", "tdt_mean");
    for lab in [2.0, 5.0, 10.0, 15.0, 20.0] {
        let system = SystemConfig { lab_burnin: lab, ..SystemConfig::default() };
        let m = run_ensemble(&system, &Policy::Type1, &sim)?;
        println!(
            "{lab:>10} {:>9.2} {:>9.2}",
            m.red_zone_severity.unwrap_or(f64::NAN),
            m.tdt.map_or(f64::NAN, |s| s.mean)
        );
    }
    Ok(())
}
