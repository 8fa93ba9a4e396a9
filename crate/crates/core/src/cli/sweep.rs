use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::achievability::{max_sum_rate, RelayMode};
use crate::bandwidth::{optimize_bandwidth, BwObjective};
use crate::channel::{Scenario, ScenarioConfig, PARAM_NAMES};
use crate::error::{Error, Result};
use crate::outerbound::sum_rate_upper_bound;

use super::{fmt_sig, resolve_workers};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObjectiveName {
    #[serde(rename = "sr", alias = "AchievableSR")]
    Sr,
    #[serde(rename = "if", alias = "AchievableIF")]
    If,
    #[serde(rename = "ub", alias = "UpperBound")]
    Ub,
}

impl ObjectiveName {
    fn label(self) -> &'static str {
        self.bw().short()
    }

    fn bw(self) -> BwObjective {
        match self {
            ObjectiveName::Sr => BwObjective::AchievableSR,
            ObjectiveName::If => BwObjective::AchievableIF,
            ObjectiveName::Ub => BwObjective::UpperBound,
        }
    }
}

/// Evenly spaced values, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub base: ScenarioConfig,
    pub param: String,
    #[serde(default)]
    pub values: Option<Vec<f64>>,
    #[serde(default)]
    pub range: Option<Range>,
    pub objectives: Vec<ObjectiveName>,
    #[serde(default)]
    pub optimize_bw: bool,
    #[serde(default)]
    pub eta: Option<f64>,
}

fn invalid(field: &str, reason: impl Into<String>) -> Error {
    Error::InvalidField {
        field: field.into(),
        reason: reason.into(),
    }
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SweepSpec = serde_json::from_str(text)?;
        spec.sweep_values()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn sweep_values(&self) -> Result<Vec<f64>> {
        if !PARAM_NAMES.contains(&self.param.as_str()) {
            return Err(invalid(
                "param",
                format!("`{}` is not one of {}", self.param, PARAM_NAMES.join(", ")),
            ));
        }
        let values = match (&self.values, &self.range) {
            (Some(v), None) => v.clone(),
            (None, Some(r)) => {
                if r.count == 0 || !(r.lo.is_finite() && r.hi.is_finite()) {
                    return Err(invalid("range", "needs finite lo, hi and count >= 1"));
                }
                if r.count == 1 {
                    vec![r.lo]
                } else {
                    let last = (r.count - 1) as f64;
                    (0..r.count)
                        .map(|i| r.lo + (r.hi - r.lo) * i as f64 / last)
                        .collect()
                }
            }
            _ => return Err(invalid("values", "give exactly one of `values` and `range`")),
        };
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("values", "must be nonempty and finite"));
        }
        if self.objectives.is_empty() {
            return Err(invalid("objectives", "must name at least one of sr, if, ub"));
        }
        if self.optimize_bw && !self.eta.is_some_and(|e| e.is_finite() && e > 0.0) {
            return Err(invalid("eta", "a positive eta is required with optimize_bw"));
        }
        Ok(values)
    }

    /// Column names, in output order.
    pub fn header(&self) -> Vec<String> {
        let mut h = vec![self.param.clone()];
        for o in &self.objectives {
            let l = o.label();
            h.push(format!("{l}_rate"));
            h.push(format!("{l}_xi"));
            if self.optimize_bw {
                h.push(format!("{l}_eta_mac"));
                h.push(format!("{l}_eta_bc"));
            }
        }
        h.push("warning".into());
        h
    }

    fn scenario_at(&self, v: f64) -> Result<Scenario> {
        let base = if self.optimize_bw {
            self.base.to_scenario_for_bandwidth()?
        } else {
            self.base.to_scenario()?
        };
        base.with_param(&self.param, v)
    }

    fn row(&self, v: f64, sc: &Scenario) -> Vec<String> {
        let mut row = vec![fmt_sig(v)];
        let mut warnings = Vec::new();
        let width = if self.optimize_bw { 4 } else { 2 };
        for o in &self.objectives {
            let cells = if self.optimize_bw {
                optimize_bandwidth(sc, self.eta.unwrap_or(1.0), o.bw()).map(|r| {
                    vec![r.rate, r.inner.xi(), r.eta_mac_star, r.eta_bc_star]
                })
            } else {
                match o {
                    ObjectiveName::Sr => max_sum_rate(sc, RelayMode::SignalRelayingOnly)
                        .map(|r| vec![r.sum_rate, r.xi_star.xi]),
                    ObjectiveName::If => max_sum_rate(sc, RelayMode::InterferenceForwarding)
                        .map(|r| vec![r.sum_rate, r.xi_star.xi]),
                    ObjectiveName::Ub => sum_rate_upper_bound(sc).map(|u| vec![u.value, u.xi.xi]),
                }
            };
            match cells {
                Ok(c) => row.extend(c.into_iter().map(fmt_sig)),
                Err(e) => {
                    warnings.push(format!("{}: {e}", o.label()));
                    row.extend(std::iter::repeat(String::new()).take(width));
                }
            }
        }
        row.push(warnings.join("; "));
        row
    }

    /// All rows, in input order.
    pub fn run(&self, workers: usize) -> Result<Vec<Vec<String>>> {
        let values = self.sweep_values()?;
        // validation errors abort before any work
        let scenarios = values
            .iter()
            .map(|&v| self.scenario_at(v))
            .collect::<Result<Vec<_>>>()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        Ok(pool.install(|| {
            values
                .par_iter()
                .zip(scenarios.par_iter())
                .map(|(&v, sc)| self.row(v, sc))
                .collect()
        }))
    }
}

pub fn write_csv<W: std::io::Write>(out: W, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Run a sweep file and write the CSV. Returns the number of rows.
pub fn cmd_sweep(spec_path: &Path, out_csv: &Path, workers: Option<usize>) -> Result<usize> {
    let spec = SweepSpec::load(spec_path)?;
    let rows = spec.run(resolve_workers(workers)?)?;
    let file = std::fs::File::create(out_csv)
        .map_err(|e| Error::Io(format!("{}: {e}", out_csv.display())))?;
    write_csv(std::io::BufWriter::new(file), &spec.header(), &rows)?;
    Ok(rows.len())
}
