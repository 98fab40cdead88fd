//! Additive bathtub model: constant useful-life rate plus a decaying burn-in
//! term and a wear-out term that switches on at `th1 + th2`.

use serde::{Deserialize, Serialize};

use super::weibull::{check_time, WeibullTerm};
use crate::error::{Error, Result};

fn default_clamp_fraction() -> f64 {
    1e-6
}

/// Hardware hazard of one controller unit over its effective age.
///
/// The three declared phase durations are configuration, not something the
/// model derives from its terms: `th1` is the burn-in duration, `th2` the
/// useful-life duration and `th3` the wear-out duration. The wear-out term
/// is offset so that it starts at `th1 + th2`; because its shape exceeds 1
/// it is exactly zero there and the curve stays continuous.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BathtubModel {
    /// Constant useful-phase rate, failures per week.
    pub useful_rate: f64,
    pub burnin: WeibullTerm,
    pub wearout: WeibullTerm,
    pub th1: f64,
    pub th2: f64,
    pub th3: f64,
    /// Burn-in terms are evaluated no closer to the origin than
    /// `clamp_fraction * th1`.
    pub clamp_fraction: f64,
}

impl Default for BathtubModel {
    /// Reference unit: 20-week burn-in, 180-week useful life, 40-week wear-out.
    fn default() -> Self {
        BathtubModel {
            useful_rate: 2e-4,
            burnin: WeibullTerm { scale: 0.03, shape: 0.2 },
            wearout: WeibullTerm { scale: 3e-6, shape: 3.0 },
            th1: 20.0,
            th2: 180.0,
            th3: 40.0,
            clamp_fraction: default_clamp_fraction(),
        }
    }
}

impl BathtubModel {
    pub fn new(
        useful_rate: f64,
        burnin: WeibullTerm,
        wearout: WeibullTerm,
        th1: f64,
        th2: f64,
        th3: f64,
    ) -> Result<Self> {
        let model = BathtubModel {
            useful_rate,
            burnin,
            wearout,
            th1,
            th2,
            th3,
            clamp_fraction: default_clamp_fraction(),
        };
        model.validate("hazard")?;
        Ok(model)
    }

    /// Constant-rate model: both shaped terms switched off.
    pub fn constant(rate: f64, th1: f64, th2: f64, th3: f64) -> Result<Self> {
        Self::new(
            rate,
            WeibullTerm { scale: 0.0, shape: 0.5 },
            WeibullTerm { scale: 0.0, shape: 2.0 },
            th1,
            th2,
            th3,
        )
    }

    pub fn validate(&self, path: &str) -> Result<()> {
        if !self.useful_rate.is_finite() || self.useful_rate < 0.0 {
            return Err(Error::validation(
                format!("{path}.useful_rate"),
                format!("must be finite and >= 0, got {}", self.useful_rate),
            ));
        }
        self.burnin.validate(&format!("{path}.burnin"))?;
        self.wearout.validate(&format!("{path}.wearout"))?;
        if self.burnin.shape >= 1.0 {
            return Err(Error::validation(
                format!("{path}.burnin.shape"),
                format!("burn-in shape must lie in (0, 1), got {}", self.burnin.shape),
            ));
        }
        if self.wearout.shape <= 1.0 {
            return Err(Error::validation(
                format!("{path}.wearout.shape"),
                format!("wear-out shape must exceed 1, got {}", self.wearout.shape),
            ));
        }
        for (name, v) in [("th1", self.th1), ("th2", self.th2), ("th3", self.th3)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::validation(
                    format!("{path}.{name}"),
                    format!("must be finite and > 0, got {v}"),
                ));
            }
        }
        if !self.clamp_fraction.is_finite() || self.clamp_fraction <= 0.0 {
            return Err(Error::validation(
                format!("{path}.clamp_fraction"),
                format!("must be finite and > 0, got {}", self.clamp_fraction),
            ));
        }
        Ok(())
    }

    /// Non-fatal inconsistencies between the declared phases and the terms.
    pub fn consistency_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let at_th1 = self.burnin.eval(self.th1);
        if at_th1 > 0.01 * self.useful_rate {
            out.push(format!(
                "burn-in term at th1 = {} weeks is {at_th1:.3e}/week, above 1% of the useful rate {:.3e}/week; \
                 the declared burn-in phase ends before the term has decayed",
                self.th1, self.useful_rate
            ));
        }
        out
    }

    /// Age at which the wear-out term switches on.
    pub fn wearout_onset(&self) -> f64 {
        self.th1 + self.th2
    }

    /// Floor used for the burn-in singularity.
    pub fn t_min(&self) -> f64 {
        self.clamp_fraction * self.th1
    }

    pub fn hazard(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(self.hazard_unchecked(t, true))
    }

    pub fn cumulative(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(self.cumulative_unchecked(t, true))
    }

    pub(crate) fn hazard_unchecked(&self, t: f64, with_wearout: bool) -> f64 {
        let mut h = self.useful_rate;
        if self.burnin.scale > 0.0 {
            h += self.burnin.eval(t.max(self.t_min()));
        }
        if with_wearout {
            let onset = self.wearout_onset();
            if t > onset {
                h += self.wearout.eval(t - onset);
            }
        }
        h
    }

    pub(crate) fn cumulative_unchecked(&self, t: f64, with_wearout: bool) -> f64 {
        let mut h = self.useful_rate * t + self.burnin.cumulative_unchecked(t);
        if with_wearout {
            h += self.wearout.cumulative_unchecked(t - self.wearout_onset());
        }
        h
    }

    /// Smallest age `a >= from` with `H(a) = target`, or infinity when the
    /// cumulative hazard never reaches `target`.
    pub(crate) fn age_at_cumulative(&self, target: f64, from: f64, with_wearout: bool) -> f64 {
        let h = |a: f64| self.cumulative_unchecked(a, with_wearout);
        if h(from) >= target {
            return from;
        }
        let grows = self.useful_rate > 0.0
            || (with_wearout && self.wearout.scale > 0.0)
            || self.burnin.scale > 0.0;
        if !grows {
            return f64::INFINITY;
        }
        if self.useful_rate > 0.0 && self.burnin.scale == 0.0 && !(with_wearout && self.wearout.scale > 0.0) {
            return target / self.useful_rate;
        }
        let mut lo = from;
        let mut hi = from.max(1.0);
        while h(hi) < target {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() {
                return f64::INFINITY;
            }
        }
        // Newton steps, falling back to bisection whenever a step leaves the bracket.
        let mut a = 0.5 * (lo + hi);
        for _ in 0..200 {
            let f = h(a) - target;
            if f > 0.0 {
                hi = a;
            } else {
                lo = a;
            }
            let slope = self.hazard_unchecked(a, with_wearout);
            let mut next = a - f / slope;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - a).abs() <= 1e-14 * a.abs().max(f64::MIN_POSITIVE) || hi - lo <= 1e-14 * hi {
                return next;
            }
            a = next;
        }
        a
    }
}

/// Free-function form of [`BathtubModel::hazard`].
pub fn bathtub_hazard(t: f64, model: &BathtubModel) -> Result<f64> {
    model.hazard(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_model() -> BathtubModel {
        BathtubModel::new(
            0.01,
            WeibullTerm::new(0.05, 0.5).unwrap(),
            WeibullTerm::new(1e-6, 3.0).unwrap(),
            20.0,
            80.0,
            40.0,
        )
        .unwrap()
    }

    #[test]
    fn worked_examples() {
        let m = worked_model();
        assert_eq!(m.wearout_onset(), 100.0);
        assert!((m.hazard(25.0).unwrap() - 0.015).abs() < 1e-15);
        let expected = 0.01 + 0.05 * 0.5 * 150f64.powf(-0.5) + 1e-6 * 3.0 * 50.0 * 50.0;
        assert!((m.hazard(150.0).unwrap() - expected).abs() < 1e-15);
        assert!((m.hazard(150.0).unwrap() - 0.01954124).abs() < 5e-9);
    }

    #[test]
    fn plateau_before_onset_approaches_useful_rate() {
        let m = BathtubModel::new(
            0.01,
            WeibullTerm::new(0.05, 0.5).unwrap(),
            WeibullTerm::new(1e-6, 3.0).unwrap(),
            20.0,
            1e9,
            40.0,
        )
        .unwrap();
        let h = m.hazard(1e8).unwrap();
        assert!((h - 0.01).abs() < 1e-5);
    }

    #[test]
    fn continuous_at_onset() {
        let m = worked_model();
        let onset = m.wearout_onset();
        for eps in [1e-2, 1e-4, 1e-6] {
            let jump = (m.hazard(onset + eps).unwrap() - m.hazard(onset - eps).unwrap()).abs();
            assert!(jump < 1e-3 * eps.sqrt(), "eps={eps} jump={jump}");
        }
    }

    #[test]
    fn zero_amplitude_terms_reduce_to_constant() {
        let m = BathtubModel::constant(0.013, 20.0, 180.0, 40.0).unwrap();
        for t in [0.0, 1e-9, 3.0, 200.0, 1e4] {
            assert_eq!(m.hazard(t).unwrap(), 0.013);
        }
    }

    #[test]
    fn origin_is_clamped() {
        let m = worked_model();
        let at_zero = m.hazard(0.0).unwrap();
        assert!(at_zero.is_finite());
        assert_eq!(at_zero, m.hazard(m.t_min()).unwrap());
    }

    #[test]
    fn validation_paths() {
        let mut m = worked_model();
        m.burnin.shape = 1.5;
        let err = m.validate("system.hazard").unwrap_err();
        assert!(err.to_string().contains("system.hazard.burnin.shape"), "{err}");
        let mut m = worked_model();
        m.wearout.shape = 1.0;
        assert!(m.validate("h").is_err());
        let mut m = worked_model();
        m.th3 = 0.0;
        assert!(m.validate("h").unwrap_err().to_string().contains("h.th3"));
    }

    #[test]
    fn warns_when_burnin_outlives_declared_phase() {
        assert_eq!(worked_model().consistency_warnings().len(), 1);
        assert!(BathtubModel::constant(0.01, 20.0, 80.0, 40.0)
            .unwrap()
            .consistency_warnings()
            .is_empty());
    }

    #[test]
    fn inverse_cumulative_round_trips() {
        let m = worked_model();
        for target in [1e-4, 0.1, 1.0, 3.0, 25.0] {
            for with_wearout in [true, false] {
                let a = m.age_at_cumulative(target, 0.0, with_wearout);
                let back = m.cumulative_unchecked(a, with_wearout);
                assert!(((back - target) / target).abs() < 1e-10, "{target} {a} {back}");
            }
        }
        let flat = BathtubModel::constant(0.0, 20.0, 80.0, 40.0).unwrap();
        assert!(flat.age_at_cumulative(1.0, 0.0, true).is_infinite());
        let expo = BathtubModel::constant(0.01, 20.0, 80.0, 40.0).unwrap();
        assert_eq!(expo.age_at_cumulative(2.0, 0.0, true), 200.0);
    }
}
