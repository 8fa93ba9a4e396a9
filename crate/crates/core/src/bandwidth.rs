//! Splitting the OBRC bandwidth `eta` between the relay's MAC and BC phases.

use serde::Serialize;

use crate::achievability::{max_sum_rate, sum_rate_objective, AchievableResult, RelayMode};
use crate::channel::{BandwidthSplit, Scenario};
use crate::error::{Error, Result};
use crate::numerics::{maximize_scalar, try_maximize_scalar, DEFAULT_GRID, DEFAULT_TOL};
use crate::outerbound::{bound_objective, sum_rate_upper_bound, UpperBound};

/// Outer grid over `eta_mac`.
pub const OUTER_GRID: usize = 501;

/// Objective spread below which the allocation is reported as irrelevant.
pub const FLAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BwObjective {
    AchievableSR,
    AchievableIF,
    UpperBound,
}

impl BwObjective {
    pub fn short(self) -> &'static str {
        match self {
            BwObjective::AchievableSR => "sr",
            BwObjective::AchievableIF => "if",
            BwObjective::UpperBound => "ub",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum InnerResult {
    Achievable(AchievableResult),
    Bound(UpperBound),
}

impl InnerResult {
    pub fn xi(&self) -> f64 {
        match self {
            InnerResult::Achievable(a) => a.xi_star.xi,
            InnerResult::Bound(b) => b.xi.xi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandwidthResult {
    pub eta_mac_star: f64,
    pub eta_bc_star: f64,
    pub rate: f64,
    pub objective: BwObjective,
    pub inner: InnerResult,
    /// The rate does not depend on the allocation.
    pub flat: bool,
}

fn inner_value(sc: &Scenario, objective: BwObjective) -> Result<f64> {
    let opt = match objective {
        BwObjective::AchievableSR => maximize_scalar(
            sum_rate_objective(sc, RelayMode::SignalRelayingOnly),
            0.0,
            1.0,
            DEFAULT_GRID,
            DEFAULT_TOL,
        )?,
        BwObjective::AchievableIF => maximize_scalar(
            sum_rate_objective(sc, RelayMode::InterferenceForwarding),
            0.0,
            1.0,
            DEFAULT_GRID,
            DEFAULT_TOL,
        )?,
        BwObjective::UpperBound => {
            maximize_scalar(bound_objective(sc)?, 0.0, 1.0, DEFAULT_GRID, DEFAULT_TOL)?
        }
    };
    Ok(opt.f_star)
}

fn with_split(sc: &Scenario, eta: f64, eta_mac: f64) -> Result<Scenario> {
    sc.with_bandwidth(BandwidthSplit::from_total(eta, eta_mac.clamp(0.0, eta))?)
}

/// Optimized objective (over `xi`) at a fixed allocation.
pub fn evaluate_at(sc: &Scenario, eta: f64, eta_mac: f64, objective: BwObjective) -> Result<f64> {
    inner_value(&with_split(sc, eta, eta_mac)?, objective)
}

/// Maximize `objective` over `eta_mac` in `[0, eta]`, `eta_bc = eta - eta_mac`.
///
/// The bandwidth fractions stored in `sc` are ignored.
pub fn optimize_bandwidth(sc: &Scenario, eta: f64, objective: BwObjective) -> Result<BandwidthResult> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::InvalidField {
            field: "eta".into(),
            reason: format!("must be > 0, got {eta}"),
        });
    }
    let opt = try_maximize_scalar(
        |m| evaluate_at(sc, eta, m, objective),
        0.0,
        eta,
        OUTER_GRID,
        DEFAULT_TOL,
    )?;
    let eta_mac_star = opt.x_star.clamp(0.0, eta);
    let best = with_split(sc, eta, eta_mac_star)?;
    let inner = match objective {
        BwObjective::AchievableSR => {
            InnerResult::Achievable(max_sum_rate(&best, RelayMode::SignalRelayingOnly)?)
        }
        BwObjective::AchievableIF => {
            InnerResult::Achievable(max_sum_rate(&best, RelayMode::InterferenceForwarding)?)
        }
        BwObjective::UpperBound => InnerResult::Bound(sum_rate_upper_bound(&best)?),
    };
    Ok(BandwidthResult {
        eta_mac_star,
        eta_bc_star: best.bw().eta_bc,
        rate: opt.f_star,
        objective,
        inner,
        flat: opt.is_flat(FLAT_TOL),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{cap, ChannelGains, Powers};

    pub(crate) fn balance_setup(b1: f64) -> Scenario {
        Scenario::new(
            ChannelGains {
                a12: 0.5,
                a21: 1.8,
                b1,
                b2: 2.0,
                c1: 2.0,
                c2: 0.3,
            },
            Powers {
                p1: 10.0,
                p2: 10.0,
                p1r: 10.0,
                p2r: 10.0,
                pr: 10.0,
            },
            BandwidthSplit::new(0.5, 0.5).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn relay_off_is_flat() {
        let sc = balance_setup(2.0).with_param("PR", 0.0).unwrap();
        let r = optimize_bandwidth(&sc, 1.0, BwObjective::AchievableSR).unwrap();
        assert!(r.flat);
        // IC-only sum rate with a21 above threshold: C(P1) + C(P2 / (1 + a12^2 P1))
        let ic = cap(10.0) + cap(10.0 / 3.5);
        assert!((r.rate - ic).abs() < 1e-9);
    }

    #[test]
    fn achievable_meets_bound_and_links_balance() {
        for b1 in [2.0, 4.0] {
            let sc = balance_setup(b1);
            let sr = optimize_bandwidth(&sc, 1.0, BwObjective::AchievableSR).unwrap();
            let ub = optimize_bandwidth(&sc, 1.0, BwObjective::UpperBound).unwrap();
            assert!(sr.rate <= ub.rate + 1e-9);
            assert!(ub.rate - sr.rate < 1e-3, "b1 = {b1}: {} vs {}", sr.rate, ub.rate);

            let xi = sr.inner.xi();
            let mac = sr.eta_mac_star * cap(b1 * b1 * 10.0);
            let bc = sr.eta_bc_star * cap(4.0 * xi * 10.0);
            assert!((mac - bc).abs() < 1e-3, "b1 = {b1}: {mac} vs {bc}");
        }
    }

    #[test]
    fn mac_share_shrinks_with_b1() {
        let shares: Vec<f64> = [2.0, 4.0, 8.0, 16.0]
            .iter()
            .map(|&b1| {
                optimize_bandwidth(&balance_setup(b1), 1.0, BwObjective::AchievableSR)
                    .unwrap()
                    .eta_mac_star
            })
            .collect();
        assert!(shares.windows(2).all(|w| w[1] < w[0]), "{shares:?}");
    }

    #[test]
    fn beats_even_split_and_reevaluates() {
        let sc = balance_setup(3.0);
        for obj in [
            BwObjective::AchievableSR,
            BwObjective::AchievableIF,
            BwObjective::UpperBound,
        ] {
            let r = optimize_bandwidth(&sc, 1.0, obj).unwrap();
            assert!(r.rate >= evaluate_at(&sc, 1.0, 0.5, obj).unwrap());
            let again = evaluate_at(&sc, 1.0, r.eta_mac_star, obj).unwrap();
            assert!((again - r.rate).abs() <= 1e-9);
            assert!((0.0..=1.0).contains(&r.eta_mac_star));
            assert!((r.eta_mac_star + r.eta_bc_star - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_eta_and_regime() {
        let sc = balance_setup(2.0);
        assert!(optimize_bandwidth(&sc, 0.0, BwObjective::AchievableSR).is_err());
        let weak_c1 = sc.with_param("c1", 0.1).unwrap();
        assert!(matches!(
            optimize_bandwidth(&weak_c1, 1.0, BwObjective::UpperBound),
            Err(Error::Regime(_))
        ));
    }
}
