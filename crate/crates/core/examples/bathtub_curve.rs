//! Prints the reference unit's bathtub hazard as CSV on stdout.
//!
//! cargo run --example bathtub_curve > bathtub.csv

use redzone::hazards::BathtubModel;

fn main() -> redzone::Result<()> {
    let model = BathtubModel::default();
    for warning in model.consistency_warnings() {
        eprintln!("warning: {warning}");
    }
    let end = model.th1 + model.th2 + model.th3;
    println!("t_weeks,hazard,cumulative");
    let mut t = 0.0;
    while t <= end {
        println!("{t},{},{}", model.hazard(t)?, model.cumulative(t)?);
        t += 1.0;
    }
    Ok(())
}
