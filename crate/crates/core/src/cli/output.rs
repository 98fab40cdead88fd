use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::analysis::{ComparisonReport, RedZone};
use crate::error::Result;
use crate::montecarlo::{Metrics, Summary};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
    pub ci95: [f64; 2],
    pub n: usize,
}

impl From<Summary> for Stat {
    fn from(s: Summary) -> Self {
        Stat { mean: s.mean, std: s.std, ci95: s.ci95, n: s.n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RedZoneOut {
    pub start: f64,
    pub end: f64,
    pub severity: f64,
    pub baseline: f64,
}

impl From<RedZone> for RedZoneOut {
    fn from(r: RedZone) -> Self {
        RedZoneOut { start: r.start, end: r.end, severity: r.severity, baseline: r.baseline }
    }
}

/// Policy-level part of the simulate and compare documents.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub policy: &'static str,
    pub replications: usize,
    pub censored_count: usize,
    pub usable: bool,
    pub trdd_weeks: Option<Stat>,
    pub tdt_weeks: Option<Stat>,
    pub dp_weeks: Option<Stat>,
    pub tdr_weeks: Option<Stat>,
    pub red_zone: Option<RedZoneOut>,
    pub red_zone_severity: Option<f64>,
    pub red_zone_window: [f64; 2],
}

impl From<&Metrics> for EnsembleSummary {
    fn from(m: &Metrics) -> Self {
        EnsembleSummary {
            policy: m.policy,
            replications: m.replications,
            censored_count: m.censored_count,
            usable: m.usable,
            trdd_weeks: m.trdd.map(Stat::from),
            tdt_weeks: m.tdt.map(Stat::from),
            dp_weeks: m.dp.map(Stat::from),
            tdr_weeks: m.tdr.map(Stat::from),
            red_zone: m.red_zone.map(RedZoneOut::from),
            red_zone_severity: m.red_zone_severity,
            red_zone_window: m.red_zone_window,
        }
    }
}

/// Document written by `simulate`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulateSummary {
    pub schema_version: u32,
    pub seed: u64,
    #[serde(flatten)]
    pub ensemble: EnsembleSummary,
}

/// Document written by `compare`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub schema_version: u32,
    pub seed: u64,
    pub rotation_period: f64,
    pub extension_ratio: Option<f64>,
    pub tdr_1: Option<Stat>,
    pub tdr_2: Option<Stat>,
    pub type1: EnsembleSummary,
    pub type2: EnsembleSummary,
}

impl CompareReport {
    pub fn new(schema_version: u32, seed: u64, rotation_period: f64, r: &ComparisonReport) -> Self {
        CompareReport {
            schema_version,
            seed,
            rotation_period,
            extension_ratio: r.extension_ratio,
            tdr_1: r.tdr_1.map(Stat::from),
            tdr_2: r.tdr_2.map(Stat::from),
            type1: EnsembleSummary::from(&r.metrics_type1),
            type2: EnsembleSummary::from(&r.metrics_type2),
        }
    }
}

/// Comma-separated rows with a header, LF endings.
pub(crate) struct Csv {
    buf: String,
    columns: usize,
}

impl Csv {
    pub(crate) fn new(header: &[&str]) -> Self {
        let mut csv = Csv { buf: String::new(), columns: header.len() };
        csv.push(header.iter().map(|s| s.to_string()));
        csv
    }

    pub(crate) fn push<I: IntoIterator<Item = String>>(&mut self, fields: I) {
        let fields: Vec<String> = fields.into_iter().collect();
        debug_assert_eq!(fields.len(), self.columns);
        let _ = writeln!(self.buf, "{}", fields.join(","));
    }

    pub(crate) fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, &self.buf)?;
        Ok(())
    }
}

/// Shortest round-trip rendering; empty for absent values.
pub(crate) fn num(x: f64) -> String {
    format!("{x}")
}

pub(crate) fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
