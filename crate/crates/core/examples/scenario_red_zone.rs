//! Deterministic end-of-life timeline for a tight and a wide lifetime spread,
//! with the red zone found on the composed system hazard.

use redzone::analysis::scenario_red_zone;
use redzone::system::{scenario_timeline, SystemConfig};

fn main() -> redzone::Result<()> {
    let base = SystemConfig::default();
    for sd in [2.2, 20.0, 80.0] {
        let timeline = scenario_timeline(&base.with_spread(sd)?)?;
        let b = timeline.boundaries;
        println!("spread {sd} weeks: T0 {} Tf1 {} Tf2 {} T2 {} Tdt {}", b.t0, b.tf1, b.tf2, b.t2, b.tdt);
        for seg in &timeline.segments {
            let markers: Vec<&str> = seg.end_markers.iter().map(|m| m.as_str()).collect();
            println!("  [{:>7.2}, {:>7.2}) {:?} {} unit(s) {markers:?}", seg.t_start, seg.t_end, seg.composition, seg.units.len());
        }
        match scenario_red_zone(&timeline, 0.25, 2.0)? {
            Some(rz) => println!("  red zone [{}, {}) severity {:.2}", rz.start, rz.end, rz.severity),
            None => println!("  no red zone"),
        }
    }
    Ok(())
}
