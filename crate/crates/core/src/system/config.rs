use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hazards::{
    lognormal_from_mean_sd, BathtubModel, LifetimeDistribution, OperatorHazard, SoftwareHazardModel,
};

/// How a simulated unit's lifetime is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FailureMode {
    /// End of life only: the lognormal lifetime budget.
    #[default]
    Wearout,
    /// Hazard-driven only: the lifetime is drawn from the full bathtub curve.
    Hazard,
    /// The earlier of the lognormal end of life and a random failure driven
    /// by the burn-in and useful-life terms of the bathtub curve.
    Competing,
}

/// Number of active slots and shelf spares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Architecture {
    pub active_slots: usize,
    pub spares: usize,
}

impl Default for Architecture {
    fn default() -> Self {
        Architecture { active_slots: 2, spares: 1 }
    }
}

impl Architecture {
    pub fn unit_count(&self) -> usize {
        self.active_slots + self.spares
    }
}

/// Everything that describes the installed system and its units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SystemConfig {
    pub hazard: BathtubModel,
    pub software: Option<SoftwareHazardModel>,
    pub operator: Option<OperatorHazard>,
    /// Unit lifetime; in the deterministic scenario `sd` is used as the
    /// stagger between the two main controllers.
    pub lifetime: LifetimeDistribution,
    pub failure_mode: FailureMode,
    /// Fraction of shelf time that counts towards effective age, in [0, 1].
    pub shelf_aging_factor: f64,
    /// Weeks of burn-in a spare receives in the lab before it is shelved.
    pub lab_burnin: f64,
    /// System warranty, weeks. Reported, not simulated.
    pub warranty: f64,
    pub architecture: Architecture,
    /// Vendor MTBF used by the replace-on-failure decision rule; defaults to
    /// the lifetime mean.
    pub vendor_mtbf: Option<f64>,
    pub dp_warn_factor: f64,
}

impl Default for SystemConfig {
    /// Reference system: a 220-week unit lifetime ending 20 weeks into a
    /// 40-week wear-out phase, a 20-week burn-in and a 2-week lab burn-in.
    fn default() -> Self {
        SystemConfig {
            hazard: BathtubModel::default(),
            software: None,
            operator: None,
            lifetime: lognormal_from_mean_sd(220.0, 2.2).expect("valid default lifetime"),
            failure_mode: FailureMode::Wearout,
            shelf_aging_factor: 0.0,
            lab_burnin: 2.0,
            warranty: 104.0,
            architecture: Architecture::default(),
            vendor_mtbf: None,
            dp_warn_factor: 0.8,
        }
    }
}

impl SystemConfig {
    pub fn validate(&self, path: &str) -> Result<()> {
        self.hazard.validate(&format!("{path}.hazard"))?;
        if let Some(sw) = &self.software {
            sw.validate(&format!("{path}.software"))?;
        }
        if let Some(op) = &self.operator {
            op.validate(&format!("{path}.operator"))?;
        }
        let a = self.shelf_aging_factor;
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::validation(
                format!("{path}.shelf_aging_factor"),
                format!("must lie in [0, 1], got {a}"),
            ));
        }
        for (name, v) in [("lab_burnin", self.lab_burnin), ("warranty", self.warranty)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::validation(format!("{path}.{name}"), format!("must be finite and >= 0, got {v}")));
            }
        }
        if !self.dp_warn_factor.is_finite() || self.dp_warn_factor <= 0.0 {
            return Err(Error::validation(
                format!("{path}.dp_warn_factor"),
                format!("must be finite and > 0, got {}", self.dp_warn_factor),
            ));
        }
        if let Some(m) = self.vendor_mtbf {
            if !m.is_finite() || m <= 0.0 {
                return Err(Error::validation(format!("{path}.vendor_mtbf"), format!("must be finite and > 0, got {m}")));
            }
        }
        let arch = self.architecture;
        if !(1..=2).contains(&arch.active_slots) {
            return Err(Error::validation(
                format!("{path}.architecture.active_slots"),
                format!("must be 1 or 2, got {}", arch.active_slots),
            ));
        }
        if arch.spares > 1 {
            return Err(Error::validation(
                format!("{path}.architecture.spares"),
                format!("must be 0 or 1, got {}", arch.spares),
            ));
        }
        Ok(())
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = self.hazard.consistency_warnings();
        if self.lab_burnin > self.hazard.th1 {
            out.push(format!(
                "lab burn-in of {} weeks exceeds the declared burn-in phase th1 = {} weeks",
                self.lab_burnin, self.hazard.th1
            ));
        }
        out
    }

    pub fn software_model(&self) -> SoftwareHazardModel {
        self.software.clone().unwrap_or_default()
    }

    pub fn operator_rate(&self) -> f64 {
        self.operator.map_or(0.0, |o| o.rate)
    }

    pub fn vendor_mtbf(&self) -> f64 {
        self.vendor_mtbf.unwrap_or(self.lifetime.mean())
    }

    pub fn with_spread(&self, sd: f64) -> Result<Self> {
        Ok(SystemConfig {
            lifetime: lognormal_from_mean_sd(self.lifetime.mean(), sd)?,
            ..self.clone()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        let c = SystemConfig::default();
        c.validate("system").unwrap();
        assert_eq!(c.vendor_mtbf(), 220.0);
        assert_eq!(c.hazard.wearout_onset(), 200.0);
    }

    #[test]
    fn rejects_out_of_range_fields_with_paths() {
        let c = SystemConfig { shelf_aging_factor: 1.5, ..Default::default() };
        let e = c.validate("system").unwrap_err().to_string();
        assert!(e.contains("system.shelf_aging_factor"), "{e}");
        let c = SystemConfig { architecture: Architecture { active_slots: 3, spares: 1 }, ..Default::default() };
        assert!(c.validate("system").unwrap_err().to_string().contains("active_slots"));
    }

    #[test]
    fn warns_on_long_lab_burnin() {
        let c = SystemConfig { lab_burnin: 25.0, ..Default::default() };
        assert!(c.warnings().iter().any(|w| w.contains("lab burn-in")));
    }
}
