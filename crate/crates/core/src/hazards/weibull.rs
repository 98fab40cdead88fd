//! Power-law (Weibull) hazard terms, the building block of the bathtub curve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single Weibull hazard term `h(t) = scale * shape * t^(shape - 1)`.
///
/// `shape < 1` gives a decreasing rate (burn-in), `shape == 1` a constant
/// rate and `shape > 1` an increasing rate (wear-out). A zero `scale` is
/// accepted and switches the term off.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeibullTerm {
    /// Rate-like coefficient, failures per week^shape.
    pub scale: f64,
    /// Dimensionless shape exponent.
    pub shape: f64,
}

impl WeibullTerm {
    pub fn new(scale: f64, shape: f64) -> Result<Self> {
        let term = WeibullTerm { scale, shape };
        term.validate("term")?;
        Ok(term)
    }

    pub(crate) fn validate(&self, path: &str) -> Result<()> {
        if !self.scale.is_finite() || self.scale < 0.0 {
            return Err(Error::validation(
                format!("{path}.scale"),
                format!("must be finite and >= 0, got {}", self.scale),
            ));
        }
        if !self.shape.is_finite() || self.shape <= 0.0 {
            return Err(Error::validation(
                format!("{path}.shape"),
                format!("must be finite and > 0, got {}", self.shape),
            ));
        }
        Ok(())
    }

    /// Instantaneous hazard at `t` weeks.
    ///
    /// Fails for non-finite or negative `t`, and at `t = 0` when the term is
    /// singular there (`shape < 1`). Use [`WeibullTerm::hazard_clamped`] to
    /// evaluate near the origin.
    pub fn hazard(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        if self.scale == 0.0 {
            return Ok(0.0);
        }
        if t == 0.0 {
            return match self.shape {
                s if s < 1.0 => Err(Error::Domain(format!(
                    "hazard with shape {s} is singular at t = 0"
                ))),
                1.0 => Ok(self.scale),
                _ => Ok(0.0),
            };
        }
        Ok(self.eval(t))
    }

    /// Hazard with the burn-in singularity clamped: for `shape < 1` and
    /// `t < t_min` the term is evaluated at `t_min`.
    pub fn hazard_clamped(&self, t: f64, t_min: f64) -> Result<f64> {
        check_time(t)?;
        if self.shape < 1.0 && t < t_min {
            if !(t_min > 0.0 && t_min.is_finite()) {
                return Err(Error::Domain(format!("clamp floor must be > 0, got {t_min}")));
            }
            return self.hazard(t_min);
        }
        self.hazard(t)
    }

    /// Cumulative hazard `scale * t^shape`.
    pub fn cumulative(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(self.cumulative_unchecked(t))
    }

    #[inline]
    pub(crate) fn eval(&self, t: f64) -> f64 {
        if self.shape == 1.0 {
            self.scale
        } else {
            self.scale * self.shape * t.powf(self.shape - 1.0)
        }
    }

    #[inline]
    pub(crate) fn cumulative_unchecked(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else {
            self.scale * t.powf(self.shape)
        }
    }
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("time must be finite, got {t}")));
    }
    if t < 0.0 {
        return Err(Error::Domain(format!("time must be >= 0, got {t}")));
    }
    Ok(())
}

/// Free-function form of [`WeibullTerm::hazard`].
pub fn weibull_hazard(t: f64, term: &WeibullTerm) -> Result<f64> {
    term.hazard(t)
}

/// Free-function form of [`WeibullTerm::cumulative`].
pub fn weibull_cumulative(t: f64, term: &WeibullTerm) -> Result<f64> {
    term.cumulative(t)
}
