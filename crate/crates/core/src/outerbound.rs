//! Single-letter sum-rate outer bound.
//!
//! Valid for `a12 <= 1` and `c1 >= c2`. With
//! `W = C(P1) + C(P2 / (1 + a12^2 P1))` bounding the IC mutual-information
//! pair by the worst-case-noise argument, three combinations of the
//! per-user bounds give, at relay power split `xi`:
//!
//! * `T1 = W + eta_bc C(c1^2 xi PR) + eta_bc C(c2^2 xi_bar PR / (1 + c2^2 xi PR))`
//! * `T2 = W + eta_mac C(b1^2 P1R) + eta_bc C(c2^2 xi_bar PR / (1 + c2^2 xi PR))`
//! * `T3 = C(P1) + C(P2) + eta_mac C(b1^2 P1R) + eta_mac C(b2^2 P2R)`
//!
//! The sum-rate bound is `max_xi min{T1, T2, T3}`.

use serde::Serialize;

use crate::achievability::{max_sum_rate, AchievableResult, RelayMode};
use crate::channel::{cap, PowerSplit, Scenario};
use crate::error::{Error, Result};
use crate::numerics::{maximize_scalar, DEFAULT_GRID, DEFAULT_TOL};

/// Gap below which the achievable rate and the bound are taken to coincide.
pub const CAPACITY_GAP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundTerm {
    T1,
    T2,
    T3,
}

impl BoundTerm {
    pub fn derivation(self) -> &'static str {
        match self {
            BoundTerm::T1 => {
                "worst-case-noise IC sum + relay broadcast to D1 at power xi + relay broadcast to D2 at power xi_bar (degraded broadcast bound)"
            }
            BoundTerm::T2 => {
                "worst-case-noise IC sum + S1->R cut-set + relay broadcast to D2 at power xi_bar"
            }
            BoundTerm::T3 => {
                "interference-free IC links + S1->R and S2->R cut-set rates (independent of xi)"
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundBreakdown {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub active: BoundTerm,
    pub xi: PowerSplit,
}

impl BoundBreakdown {
    pub fn value(&self) -> f64 {
        self.t1.min(self.t2).min(self.t3)
    }
}

fn check_regime(sc: &Scenario) -> Result<()> {
    let f = sc.flags();
    let g = sc.gains();
    if !f.weak_a12 {
        return Err(Error::Regime(format!(
            "outer bound needs a12 <= 1, got a12 = {}",
            g.a12
        )));
    }
    if !f.bc_ordered {
        return Err(Error::Regime(format!(
            "outer bound needs c1 >= c2, got c1 = {}, c2 = {}",
            g.c1, g.c2
        )));
    }
    Ok(())
}

pub fn bound_terms(sc: &Scenario, xi: PowerSplit) -> Result<BoundBreakdown> {
    check_regime(sc)?;
    Ok(terms_unchecked(sc, xi))
}

fn terms_unchecked(sc: &Scenario, xi: PowerSplit) -> BoundBreakdown {
    let (g, p, bw) = (sc.gains(), sc.powers(), sc.bw());
    let w = cap(p.p1) + cap(p.p2 / (1.0 + g.a12 * g.a12 * p.p1));
    let c2sq = g.c2 * g.c2;
    let bc_d1 = bw.eta_bc * cap(g.c1 * g.c1 * xi.xi * p.pr);
    let bc_d2 = bw.eta_bc * cap(c2sq * xi.xi_bar * p.pr / (1.0 + c2sq * xi.xi * p.pr));
    let mac_s1 = bw.eta_mac * cap(g.b1 * g.b1 * p.p1r);
    let mac_s2 = bw.eta_mac * cap(g.b2 * g.b2 * p.p2r);

    let t1 = w + bc_d1 + bc_d2;
    let t2 = w + mac_s1 + bc_d2;
    let t3 = cap(p.p1) + cap(p.p2) + mac_s1 + mac_s2;
    let active = if t1 <= t2 && t1 <= t3 {
        BoundTerm::T1
    } else if t2 <= t3 {
        BoundTerm::T2
    } else {
        BoundTerm::T3
    };
    BoundBreakdown {
        t1,
        t2,
        t3,
        active,
        xi,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperBound {
    pub value: f64,
    pub xi: PowerSplit,
    pub breakdown: BoundBreakdown,
}

/// `min{T1, T2, T3}` as a function of `xi` with `xi_bar = 1 - xi`.
pub fn bound_objective(sc: &Scenario) -> Result<impl Fn(f64) -> f64 + '_> {
    check_regime(sc)?;
    Ok(move |xi: f64| {
        terms_unchecked(
            sc,
            PowerSplit {
                xi,
                xi_bar: 1.0 - xi,
            },
        )
        .value()
    })
}

pub fn sum_rate_upper_bound(sc: &Scenario) -> Result<UpperBound> {
    let f = bound_objective(sc)?;
    let opt = maximize_scalar(f, 0.0, 1.0, DEFAULT_GRID, DEFAULT_TOL)?;
    let xi = PowerSplit::complementary(opt.x_star)?;
    Ok(UpperBound {
        value: opt.f_star,
        xi,
        breakdown: terms_unchecked(sc, xi),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub achievable_sr: AchievableResult,
    pub achievable_if: AchievableResult,
    pub upper: Option<UpperBound>,
    /// Why `upper` is missing.
    pub upper_error: Option<String>,
    pub gap_sr: Option<f64>,
    pub gap_if: Option<f64>,
    pub capacity_established: bool,
}

pub fn gap_report(sc: &Scenario) -> Result<GapReport> {
    let achievable_sr = max_sum_rate(sc, RelayMode::SignalRelayingOnly)?;
    let achievable_if = max_sum_rate(sc, RelayMode::InterferenceForwarding)?;
    let (upper, upper_error) = match sum_rate_upper_bound(sc) {
        Ok(ub) => (Some(ub), None),
        Err(e @ Error::Regime(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let gap_sr = upper.map(|u| u.value - achievable_sr.sum_rate);
    let gap_if = upper.map(|u| u.value - achievable_if.sum_rate);
    let capacity_established = match (gap_sr, gap_if) {
        (Some(a), Some(b)) => a.min(b) <= CAPACITY_GAP_TOL,
        _ => false,
    };
    Ok(GapReport {
        achievable_sr,
        achievable_if,
        upper,
        upper_error,
        gap_sr,
        gap_if,
        capacity_established,
    })
}
