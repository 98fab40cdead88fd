//! Lognormal unit lifetimes, parameterised by the lifetime mean and spread.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lifetime distribution of a controller unit.
///
/// `mean` and `sd` are the mean and standard deviation of the lifetime itself
/// (weeks), not of its logarithm. `sd == 0` is the deterministic point mass at
/// `mean`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LifetimeSpec", into = "LifetimeSpec")]
pub struct LifetimeDistribution {
    mean: f64,
    sd: f64,
    location: f64,
    scale: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LifetimeSpec {
    mean: f64,
    sd: f64,
}

impl TryFrom<LifetimeSpec> for LifetimeDistribution {
    type Error = Error;
    fn try_from(s: LifetimeSpec) -> Result<Self> {
        lognormal_from_mean_sd(s.mean, s.sd)
    }
}

impl From<LifetimeDistribution> for LifetimeSpec {
    fn from(d: LifetimeDistribution) -> Self {
        LifetimeSpec { mean: d.mean, sd: d.sd }
    }
}

/// Builds the lognormal whose mean and standard deviation are `mean`, `sd`.
pub fn lognormal_from_mean_sd(mean: f64, sd: f64) -> Result<LifetimeDistribution> {
    if !mean.is_finite() || mean <= 0.0 {
        return Err(Error::validation("lifetime.mean", format!("must be finite and > 0, got {mean}")));
    }
    if !sd.is_finite() || sd < 0.0 {
        return Err(Error::validation("lifetime.sd", format!("must be finite and >= 0, got {sd}")));
    }
    let cv = sd / mean;
    let scale2 = (cv * cv).ln_1p();
    Ok(LifetimeDistribution {
        mean,
        sd,
        location: mean.ln() - 0.5 * scale2,
        scale: scale2.sqrt(),
    })
}

impl LifetimeDistribution {
    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn sd(&self) -> f64 {
        self.sd
    }

    /// Mean of the log-lifetime.
    pub fn location(&self) -> f64 {
        self.location
    }

    /// Standard deviation of the log-lifetime.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn is_degenerate(&self) -> bool {
        self.sd == 0.0
    }

    pub fn median(&self) -> f64 {
        if self.is_degenerate() {
            self.mean
        } else {
            self.location.exp()
        }
    }

    /// Inverse-transform sample for a uniform variate `u` in the open unit interval.
    pub fn sample(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Domain(format!("uniform variate must lie in (0, 1), got {u}")));
        }
        if self.is_degenerate() {
            return Ok(self.mean);
        }
        Ok((self.location + self.scale * normal_quantile(u)).exp())
    }

    /// Density of the lifetime at `t` (zero for the degenerate case).
    pub fn pdf(&self, t: f64) -> f64 {
        if self.is_degenerate() || t <= 0.0 {
            return 0.0;
        }
        let z = (t.ln() - self.location) / self.scale;
        (-0.5 * z * z).exp() / (t * self.scale * (2.0 * std::f64::consts::PI).sqrt())
    }
}

/// Free-function form of [`LifetimeDistribution::sample`].
pub fn lognormal_sample(dist: &LifetimeDistribution, u: f64) -> Result<f64> {
    dist.sample(u)
}

/// Standard normal quantile, Wichura's algorithm AS 241 (PPND16).
///
/// Three rational approximations (central region `|p - 0.5| <= 0.425`, and
/// two tail regions in `r = sqrt(-ln(min(p, 1-p)))`) with relative accuracy
/// about 1e-16. Callers must pass `p` in (0, 1).
#[allow(clippy::excessive_precision)]
pub fn normal_quantile(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q
            * (((((((2509.0809287301226727 * r + 33430.575583588128105) * r
                + 67265.770927008700853)
                * r
                + 45921.953931549871457)
                * r
                + 13731.693765509461125)
                * r
                + 1971.5909503065514427)
                * r
                + 133.14166789178437745)
                * r
                + 3.387132872796366608)
            / (((((((5226.495278852545925 * r + 28729.085735721942674) * r
                + 39307.89580009271061)
                * r
                + 21213.794301586595867)
                * r
                + 5394.1960214247511077)
                * r
                + 687.1870074920579083)
                * r
                + 42.313330701600911252)
                * r
                + 1.0);
    }
    let tail = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-tail.ln()).sqrt();
    let x = if r <= 5.0 {
        r -= 1.6;
        (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r
            + 0.24178072517745061177)
            * r
            + 1.27045825245236838258)
            * r
            + 3.64784832476320460504)
            * r
            + 5.7694972214606914055)
            * r
            + 4.6303378461565452959)
            * r
            + 1.42343711074968357734)
            / (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r
                + 0.0151986665636164571966)
                * r
                + 0.14810397642748007459)
                * r
                + 0.68976733498510000455)
                * r
                + 1.6763848301838038494)
                * r
                + 2.05319162663775882187)
                * r
                + 1.0)
    } else {
        r -= 5.0;
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
            + 0.0012426609473880784386)
            * r
            + 0.026532189526576123093)
            * r
            + 0.29656057182850489123)
            * r
            + 1.7848265399172913358)
            * r
            + 5.4637849111641143699)
            * r
            + 6.6579046435011037772)
            / (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r
                + 1.8463183175100546818e-5)
                * r
                + 7.868691311456132591e-4)
                * r
                + 0.0148753612908506148525)
                * r
                + 0.13692988092273580531)
                * r
                + 0.59983220655588793769)
                * r
                + 1.0)
    };
    if q < 0.0 {
        -x
    } else {
        x
    }
}
