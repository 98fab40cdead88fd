use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maintenance::Policy;
use crate::montecarlo::SimConfig;
use crate::system::SystemConfig;

/// Schema version understood by this build.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    #[default]
    Type1,
    Type2,
}

/// Policy section of a run configuration. `rotation_period` is mandatory
/// whenever the rotation policy is used.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PolicyConfig {
    pub kind: PolicyKind,
    pub rotation_period: Option<f64>,
}

impl PolicyConfig {
    pub fn resolve(&self, kind: PolicyKind) -> Result<Policy> {
        let policy = match kind {
            PolicyKind::Type1 => Policy::Type1,
            PolicyKind::Type2 => Policy::Type2 {
                rotation_period: self.rotation_period.ok_or_else(|| {
                    Error::validation("policy.rotation_period", "required for the type2 rotation policy")
                })?,
            },
        };
        policy.validate("policy")?;
        Ok(policy)
    }
}

/// Post-processing settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalysisConfig {
    /// Grid spacing of the deterministic scenario curve, weeks.
    pub scenario_dt: f64,
    /// Spread values of the `redzone` sweep as multiples of th3.
    pub sweep_delta_ratios: Vec<f64>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { scenario_dt: 0.25, sweep_delta_ratios: vec![0.1, 0.5, 1.0, 2.0, 4.0] }
    }
}

/// The single JSON document driving every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub system: SystemConfig,
    #[serde(default)]
    pub policy: PolicyConfig,
    #[serde(default)]
    pub simulation: SimConfig,
    #[serde(default)]
    pub analysis: AnalysisConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            schema_version: SCHEMA_VERSION,
            system: SystemConfig::default(),
            policy: PolicyConfig::default(),
            simulation: SimConfig::default(),
            analysis: AnalysisConfig::default(),
        }
    }
}

impl RunConfig {
    /// Parses and validates a document; errors carry the dotted field path.
    pub fn from_json(text: &str) -> Result<RunConfig> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::validation(if path == "." { "<root>".to_string() } else { path }, e.into_inner().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::validation(
                "schema_version",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema_version),
            ));
        }
        self.system.validate("system")?;
        self.simulation.validate("simulation")?;
        if let Some(p) = self.policy.rotation_period {
            if !p.is_finite() || p <= 0.0 {
                return Err(Error::validation("policy.rotation_period", format!("must be finite and > 0, got {p}")));
            }
        }
        if !self.analysis.scenario_dt.is_finite() || self.analysis.scenario_dt <= 0.0 {
            return Err(Error::validation("analysis.scenario_dt", "must be finite and > 0"));
        }
        for (i, r) in self.analysis.sweep_delta_ratios.iter().enumerate() {
            if !r.is_finite() || *r <= 0.0 {
                return Err(Error::validation(format!("analysis.sweep_delta_ratios[{i}]"), "must be > 0"));
            }
            if i > 0 && *r < self.analysis.sweep_delta_ratios[i - 1] {
                return Err(Error::validation(format!("analysis.sweep_delta_ratios[{i}]"), "must be sorted ascending"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_uses_defaults() {
        let cfg = RunConfig::from_json(r#"{"schema_version": 1}"#).unwrap();
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn errors_carry_field_paths() {
        let e = RunConfig::from_json(r#"{"schema_version": 1, "system": {"hazard": {"th1": "x"}}}"#).unwrap_err();
        assert!(e.to_string().contains("system.hazard.th1"), "{e}");
        let e = RunConfig::from_json(r#"{"schema_version": 1, "system": {"bogus": 1}}"#).unwrap_err();
        assert!(e.to_string().contains("system"), "{e}");
        assert!(e.to_string().contains("bogus"), "{e}");
        let e = RunConfig::from_json(r#"{"system": {}}"#).unwrap_err();
        assert!(e.to_string().contains("schema_version"), "{e}");
        let e = RunConfig::from_json(r#"{"schema_version": 1, "simulation": {"replications": 0}}"#).unwrap_err();
        assert!(e.to_string().contains("simulation.replications"), "{e}");
    }

    #[test]
    fn type2_needs_a_period() {
        let cfg = RunConfig::default();
        let e = cfg.policy.resolve(PolicyKind::Type2).unwrap_err();
        assert!(e.to_string().contains("policy.rotation_period"));
        assert!(e.is_config_error());
    }
}
