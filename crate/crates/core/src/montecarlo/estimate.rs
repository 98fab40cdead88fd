use serde::Serialize;

use super::trace::Trace;
use crate::error::{Error, Result};

/// Binned system hazard estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HazardBin {
    pub start: f64,
    pub end: f64,
    pub midpoint: f64,
    pub deaths: u64,
    /// System-weeks at risk inside the bin.
    pub exposure: f64,
    pub rate: f64,
    /// Poisson standard error `sqrt(deaths) / exposure`.
    pub std_error: f64,
}

/// Deaths over at-risk time per bin of width `bin_width`, starting at 0.
///
/// Censored traces contribute exposure up to the horizon and no death. Bins
/// with no exposure are omitted.
pub fn empirical_hazard(traces: &[Trace], bin_width: f64) -> Result<Vec<HazardBin>> {
    if !bin_width.is_finite() || bin_width <= 0.0 {
        return Err(Error::Input(format!("bin width must be > 0, got {bin_width}")));
    }
    if traces.iter().all(|t| t.censored) {
        return Err(Error::Input("empirical hazard needs at least one uncensored trace".into()));
    }
    let last = traces.iter().map(|t| t.end_time).fold(0.0, f64::max);
    let nbins = ((last / bin_width).floor() as usize) + 1;
    let mut deaths = vec![0u64; nbins];
    let mut exposure = vec![0.0f64; nbins];
    for trace in traces {
        let end = trace.end_time;
        let full = (end / bin_width).floor() as usize;
        for e in exposure.iter_mut().take(full.min(nbins)) {
            *e += bin_width;
        }
        if full < nbins {
            exposure[full] += end - full as f64 * bin_width;
        }
        if let Some(tdt) = trace.tdt {
            deaths[((tdt / bin_width).floor() as usize).min(nbins - 1)] += 1;
        }
    }
    Ok((0..nbins)
        .filter(|&j| exposure[j] > 0.0)
        .map(|j| {
            let start = j as f64 * bin_width;
            let d = deaths[j];
            HazardBin {
                start,
                end: start + bin_width,
                midpoint: start + 0.5 * bin_width,
                deaths: d,
                exposure: exposure[j],
                rate: d as f64 / exposure[j],
                std_error: (d as f64).sqrt() / exposure[j],
            }
        })
        .collect())
}
