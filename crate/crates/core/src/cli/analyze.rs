use std::fmt::{self, Write as _};
use std::path::Path;

use serde::Serialize;

use crate::achievability::{
    max_sum_rate, separable_conditions, AchievableResult, RelayMode, SeparableCase,
    SeparableConditions,
};
use crate::channel::{RegimeFlags, Scenario, ScenarioConfig};
use crate::error::{Error, Result};
use crate::outerbound::{sum_rate_upper_bound, UpperBound, CAPACITY_GAP_TOL};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub scenario: ScenarioConfig,
    pub flags: RegimeFlags,
    pub separable: SeparableConditions,
    pub signal_relaying: AchievableResult,
    pub interference_forwarding: AchievableResult,
    pub upper_bound: Option<UpperBound>,
    pub upper_bound_derivation: Option<&'static str>,
    pub upper_bound_error: Option<String>,
    pub gap_sr: Option<f64>,
    pub gap_if: Option<f64>,
    pub capacity_established: bool,
    pub verdict: String,
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    ScenarioConfig::from_json(&text)?.to_scenario()
}

pub fn analyze(sc: &Scenario) -> Result<AnalysisReport> {
    let separable = separable_conditions(sc)?;
    let sr = max_sum_rate(sc, RelayMode::SignalRelayingOnly)?;
    let ifw = max_sum_rate(sc, RelayMode::InterferenceForwarding)?;
    let (upper_bound, upper_bound_error) = match sum_rate_upper_bound(sc) {
        Ok(ub) => (Some(ub), None),
        Err(e @ Error::Regime(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let gap_sr = upper_bound.map(|u| u.value - sr.sum_rate);
    let gap_if = upper_bound.map(|u| u.value - ifw.sum_rate);
    let capacity_established = matches!((gap_sr, gap_if), (Some(a), Some(b)) if a.min(b) <= CAPACITY_GAP_TOL);

    let verdict = match (capacity_established, separable.case) {
        (true, SeparableCase::None) => "sum-capacity established (bound met)".to_string(),
        (true, case) => format!("sum-capacity established (separable conditions, {case:?})"),
        (false, _) if upper_bound.is_none() => "no outer bound in this regime".to_string(),
        (false, _) => format!(
            "gap of {:.6} bits/use remains",
            gap_sr.unwrap().min(gap_if.unwrap())
        ),
    };

    Ok(AnalysisReport {
        scenario: ScenarioConfig::from(sc),
        flags: sc.flags(),
        separable,
        signal_relaying: sr,
        interference_forwarding: ifw,
        upper_bound_derivation: upper_bound.map(|u| u.breakdown.active.derivation()),
        upper_bound,
        upper_bound_error,
        gap_sr,
        gap_if,
        capacity_established,
        verdict,
    })
}

pub fn cmd_analyze(config: &Path) -> Result<AnalysisReport> {
    analyze(&load_scenario(config)?)
}

fn write_mode(out: &mut String, label: &str, r: &AchievableResult) -> fmt::Result {
    let s = &r.split;
    writeln!(
        out,
        "{label:<24} {:.6}  xi* = {:.6}",
        r.sum_rate, r.xi_star.xi
    )?;
    writeln!(
        out,
        "  split: r1p={:.6} r1r={:.6} r2cp={:.6} r2cpp={:.6} r2r={:.6}  (R1={:.6}, R2={:.6})",
        s.r1p,
        s.r1r,
        s.r2cp,
        s.r2cpp,
        s.r2r,
        s.r1(),
        s.r2()
    )
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let fl = &self.flags;
        writeln!(
            out,
            "regime: a12<=1 {}, c1>=c2 {}, a21 strong {}",
            fl.weak_a12, fl.bc_ordered, fl.strong_a21
        )?;
        let sep = &self.separable;
        writeln!(out, "separable coding case: {:?}", sep.case)?;
        writeln!(
            out,
            "  S1-R vs R-D1:      {:.6} >= {:.6}  {}",
            sep.s1_link.lhs, sep.s1_link.rhs, sep.s1_link.holds
        )?;
        match sep.s2_residual {
            Some(c) => writeln!(
                out,
                "  S2 residual vs BC: {:.6} >= {:.6}  {}",
                c.lhs, c.rhs, c.holds
            )?,
            None => writeln!(out, "  S2 residual vs BC: not evaluated")?,
        }
        for why in &sep.failed {
            writeln!(out, "  failed: {why}")?;
        }
        write_mode(&mut out, "signal relaying:", &self.signal_relaying)?;
        write_mode(&mut out, "interference forwarding:", &self.interference_forwarding)?;
        match (&self.upper_bound, &self.upper_bound_error) {
            (Some(ub), _) => {
                let b = &ub.breakdown;
                writeln!(out, "upper bound:             {:.6}  xi = {:.6}", ub.value, ub.xi.xi)?;
                writeln!(
                    out,
                    "  T1={:.6} T2={:.6} T3={:.6} active {:?}",
                    b.t1, b.t2, b.t3, b.active
                )?;
                writeln!(out, "  {}", b.active.derivation())?;
                writeln!(
                    out,
                    "gap: sr {:.6}, if {:.6}",
                    self.gap_sr.unwrap_or(f64::NAN),
                    self.gap_if.unwrap_or(f64::NAN)
                )?;
            }
            (None, Some(e)) => writeln!(out, "upper bound: {e}")?,
            (None, None) => writeln!(out, "upper bound: unavailable")?,
        }
        writeln!(out, "verdict: {}", self.verdict)?;
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::achievability::tests::c1_sweep_base;

    #[test]
    fn strong_interference_point_is_settled() {
        let r = analyze(&c1_sweep_base(1.8, 2.0)).unwrap();
        assert!(r.capacity_established);
        assert_eq!(
            r.verdict,
            "sum-capacity established (separable conditions, MacBottleneck)"
        );
        let direct = max_sum_rate(&c1_sweep_base(1.8, 2.0), RelayMode::SignalRelayingOnly).unwrap();
        assert_eq!(r.signal_relaying, direct);
        assert!(r.to_string().contains("verdict: sum-capacity established"));
    }

    #[test]
    fn regime_error_is_inline() {
        let sc = c1_sweep_base(1.8, 2.0).with_param("a12", 1.5).unwrap();
        let r = analyze(&sc).unwrap();
        assert!(r.upper_bound.is_none());
        assert!(r.upper_bound_error.as_deref().unwrap().contains("a12"));
        assert!(r.signal_relaying.sum_rate > 0.0);
        assert!(!r.capacity_established);
    }

    #[test]
    fn zero_power_gives_zero_rates() {
        let mut sc = c1_sweep_base(1.8, 2.0);
        for p in ["P1", "P2", "P1R", "P2R", "PR"] {
            sc = sc.with_param(p, 0.0).unwrap();
        }
        let r = analyze(&sc).unwrap();
        assert_eq!(r.signal_relaying.sum_rate, 0.0);
        assert_eq!(r.interference_forwarding.sum_rate, 0.0);
        assert_eq!(r.upper_bound.unwrap().value, 0.0);
    }
}
