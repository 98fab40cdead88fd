//! Closed-form hazard kernels: hardware bathtub, software, operator, and the
//! lognormal lifetime model used by the simulator.

mod bathtub;
mod lognormal;
mod software;
mod weibull;

pub use bathtub::{bathtub_hazard, BathtubModel};
pub use lognormal::{lognormal_from_mean_sd, lognormal_sample, normal_quantile, LifetimeDistribution};
pub use software::{software_hazard, OperatorHazard, SoftwareHazardModel, UpgradeEvent, UpgradeKind};
pub use weibull::{weibull_cumulative, weibull_hazard, WeibullTerm};

use crate::error::Result;

/// Total failure rate of one unit: hardware + software + operator.
pub fn component_total_hazard(
    t: f64,
    hw: &BathtubModel,
    sw: &SoftwareHazardModel,
    op: &OperatorHazard,
) -> Result<f64> {
    Ok(hw.hazard(t)? + sw.hazard(t)? + op.rate)
}
