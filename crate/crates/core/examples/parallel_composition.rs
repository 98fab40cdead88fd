//! Hazard of two identical constant-rate units in active parallel, against
//! the closed form `2 l (1 - e) / (2 - e)` with `e = exp(-l t)`.

use redzone::system::{compose_parallel, UnitRate};

fn main() -> redzone::Result<()> {
    let lambda = 0.01;
    println!("{:>8} {:>14} {:>14}", "t", "composed", "closed_form");
    for t in [1.0, 10.0, 50.0, 100.0, 200.0, 500.0] {
        let unit = UnitRate::new(lambda, lambda * t);
        let composed = compose_parallel(&[unit, unit])?;
        let e = (-lambda * t).exp();
        println!("{t:>8} {composed:>14.8e} {:>14.8e}", 2.0 * lambda * (1.0 - e) / (2.0 - e));
    }
    Ok(())
}
