//! The decode-and-forward scheme with optional interference forwarding.
//!
//! S1 sends a private message on the IC (`r1p`) and an independent message
//! through the relay (`r1r`). S2 sends common information on the IC, split
//! into a part also forwarded by the relay to D1 (`r2cp`, the interference
//! forwarding stream) and an IC-only part (`r2cpp`), plus an independent
//! message through the relay (`r2r`). The relay splits its broadcast power
//! as `xi` toward D1 and `xi_bar` toward D2.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::channel::{cap, PowerSplit, RegimeFlags, Scenario};
use crate::error::{Error, Result};
use crate::numerics::{maximize_scalar, DEFAULT_GRID, DEFAULT_TOL};
use crate::regions::{CompiledObjective, LinearRateSystem};

/// Variables of the rate-split system, in column order.
pub const RATE_VARS: [&str; 5] = ["r1p", "r1r", "r2cp", "r2cpp", "r2r"];

/// Variables of the two-user region.
pub const PAIR_VARS: [&str; 2] = ["r1", "r2"];

/// Preference order when several rate splits reach the optimal sum rate:
/// IC transmission first, then signal relaying, interference forwarding last.
const SPLIT_PREFERENCE: [&str; 5] = ["r1p", "r2cpp", "r2r", "r1r", "r2cp"];

/// Slack used when pinning an already-maximized quantity.
const PIN_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelayMode {
    /// The forwarded common stream is disabled (`r2cp = 0`).
    SignalRelayingOnly,
    InterferenceForwarding,
}

impl RelayMode {
    pub fn short(self) -> &'static str {
        match self {
            RelayMode::SignalRelayingOnly => "sr",
            RelayMode::InterferenceForwarding => "if",
        }
    }
}

/// Right-hand sides of the eight rate-split constraints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintLevels {
    /// `C(P1)`: S1's private message at D1 with S2's signal removed.
    pub ic_private: f64,
    /// `C(P1 + a21^2 P2)`: joint decoding at D1.
    pub ic_joint: f64,
    /// `C(P2 / (1 + a12^2 P1))`: S2's common message at D2, S1 as noise.
    pub ic_common: f64,
    /// `eta_mac C(b1^2 P1R)`
    pub mac_s1: f64,
    /// `eta_mac C(b2^2 P2R)`
    pub mac_s2: f64,
    /// `eta_mac C(b1^2 P1R + b2^2 P2R)`
    pub mac_sum: f64,
    /// `eta_bc C(c1^2 xi PR)`
    pub bc_d1: f64,
    /// `eta_bc C(c2^2 xi_bar PR / (1 + c2^2 xi PR))`
    pub bc_d2: f64,
}

impl ConstraintLevels {
    pub fn new(sc: &Scenario, split: PowerSplit) -> Self {
        let (g, p, bw) = (sc.gains(), sc.powers(), sc.bw());
        let (xi, xi_bar) = (split.xi, split.xi_bar);
        ConstraintLevels {
            ic_private: cap(p.p1),
            ic_joint: cap(p.p1 + g.a21 * g.a21 * p.p2),
            ic_common: cap(p.p2 / (1.0 + g.a12 * g.a12 * p.p1)),
            mac_s1: bw.eta_mac * cap(g.b1 * g.b1 * p.p1r),
            mac_s2: bw.eta_mac * cap(g.b2 * g.b2 * p.p2r),
            mac_sum: bw.eta_mac * cap(g.b1 * g.b1 * p.p1r + g.b2 * g.b2 * p.p2r),
            bc_d1: 0.0,
            bc_d2: 0.0,
        }
        .with_split(sc, xi, xi_bar)
    }

    /// Replace the two broadcast levels, which are the only ones that depend
    /// on the power split.
    fn with_split(mut self, sc: &Scenario, xi: f64, xi_bar: f64) -> Self {
        let (g, p, bw) = (sc.gains(), sc.powers(), sc.bw());
        self.bc_d1 = bw.eta_bc * cap(g.c1 * g.c1 * xi * p.pr);
        self.bc_d2 =
            bw.eta_bc * cap(g.c2 * g.c2 * xi_bar * p.pr / (1.0 + g.c2 * g.c2 * xi * p.pr));
        self
    }

    /// IC part of the sum rate when S1 is treated as noise at D2 and D1 removes
    /// S2's signal: `C(P1) + C(P2 / (1 + a12^2 P1))`.
    pub fn ic_sum(&self) -> f64 {
        self.ic_private + self.ic_common
    }

    fn rhs(&self, mode: RelayMode) -> ([f64; 10], usize) {
        let base = [
            self.ic_private,
            self.ic_joint,
            self.ic_common,
            self.mac_s1,
            self.mac_s2,
            self.mac_sum,
            self.bc_d1,
            self.bc_d2,
            0.0,
            0.0,
        ];
        let n = match mode {
            RelayMode::InterferenceForwarding => 8,
            RelayMode::SignalRelayingOnly => 10,
        };
        (base, n)
    }
}

/// The eight achievability constraints over `RATE_VARS`.
pub fn pre_fm_system(sc: &Scenario, xi: PowerSplit) -> LinearRateSystem {
    system_from_levels(&ConstraintLevels::new(sc, xi))
}

fn system_from_levels(l: &ConstraintLevels) -> LinearRateSystem {
    let rows: [(&[&str], f64); 8] = [
        (&["r1p"], l.ic_private),
        (&["r2cpp", "r1p"], l.ic_joint),
        (&["r2cp", "r2cpp"], l.ic_common),
        (&["r1r"], l.mac_s1),
        (&["r2cp", "r2r"], l.mac_s2),
        (&["r1r", "r2cp", "r2r"], l.mac_sum),
        (&["r2cp", "r1r"], l.bc_d1),
        (&["r2r"], l.bc_d2),
    ];
    let mut sys = LinearRateSystem::new(&RATE_VARS);
    for (vars, rhs) in rows {
        let terms: Vec<(&str, f64)> = vars.iter().map(|v| (*v, 1.0)).collect();
        sys.push_terms(&terms, rhs).expect("rate variables are declared");
    }
    sys
}

/// The rate-split system for a relaying mode: signal relaying only adds the
/// equality `r2cp = 0` as two rows.
pub fn mode_system(sc: &Scenario, xi: PowerSplit, mode: RelayMode) -> LinearRateSystem {
    let mut sys = pre_fm_system(sc, xi);
    add_mode_rows(&mut sys, mode);
    sys
}

fn add_mode_rows(sys: &mut LinearRateSystem, mode: RelayMode) {
    if mode == RelayMode::SignalRelayingOnly {
        sys.push_equality(&[("r2cp", 1.0)], 0.0)
            .expect("r2cp is declared");
    }
}

/// The rate-split system with `r1 = r1p + r1r` and `r2 = r2cp + r2cpp + r2r`
/// appended, over `RATE_VARS` followed by `PAIR_VARS`.
pub fn rate_pair_system(sc: &Scenario, xi: PowerSplit, mode: RelayMode) -> LinearRateSystem {
    let mut sys = mode_system(sc, xi, mode).with_vars(&PAIR_VARS);
    sys.push_equality(&[("r1", 1.0), ("r1p", -1.0), ("r1r", -1.0)], 0.0)
        .expect("declared");
    sys.push_equality(
        &[("r2", 1.0), ("r2cp", -1.0), ("r2cpp", -1.0), ("r2r", -1.0)],
        0.0,
    )
    .expect("declared");
    sys
}

/// Fourier–Motzkin shadow of the rate-split system on `(r1, r2)`.
pub fn projected_region(sc: &Scenario, xi: PowerSplit, mode: RelayMode) -> Result<LinearRateSystem> {
    rate_pair_system(sc, xi, mode).project(&PAIR_VARS)
}

/// The four-row closed-form region over `(r1, r2)`.
pub fn closed_form_region(sc: &Scenario, xi: PowerSplit) -> LinearRateSystem {
    let l = ConstraintLevels::new(sc, xi);
    let mut sys = LinearRateSystem::new(&PAIR_VARS);
    let rows = [
        (vec![1.0, 0.0], l.ic_private + l.mac_s1),
        (vec![0.0, 1.0], l.ic_common + l.bc_d2),
        (vec![1.0, 1.0], l.ic_joint + l.bc_d1 + l.bc_d2),
        (vec![1.0, 1.0], l.ic_joint + l.mac_sum),
    ];
    for (c, rhs) in rows {
        sys.push(c, rhs).expect("two columns");
    }
    sys
}

fn compiled(mode: RelayMode) -> &'static CompiledObjective {
    static TEMPLATES: OnceLock<[CompiledObjective; 2]> = OnceLock::new();
    let t = TEMPLATES.get_or_init(|| {
        let build = |mode| {
            let mut sys = system_from_levels(&ConstraintLevels {
                ic_private: 1.0,
                ic_joint: 1.0,
                ic_common: 1.0,
                mac_s1: 1.0,
                mac_s2: 1.0,
                mac_sum: 1.0,
                bc_d1: 1.0,
                bc_d2: 1.0,
            });
            add_mode_rows(&mut sys, mode);
            CompiledObjective::compile(&sys, &[1.0; 5]).expect("rate-split system is bounded")
        };
        [
            build(RelayMode::SignalRelayingOnly),
            build(RelayMode::InterferenceForwarding),
        ]
    });
    match mode {
        RelayMode::SignalRelayingOnly => &t[0],
        RelayMode::InterferenceForwarding => &t[1],
    }
}

fn sum_rate_from_levels(l: &ConstraintLevels, mode: RelayMode) -> f64 {
    let (rhs, n) = l.rhs(mode);
    compiled(mode).evaluate_unchecked(&rhs[..n])
}

/// Largest `r1 + r2` over the rate-split system at a fixed power split.
///
/// Uses the elimination compiled once per mode; agrees with
/// [`sum_rate_by_projection`] to rounding.
pub fn sum_rate_at(sc: &Scenario, xi: PowerSplit, mode: RelayMode) -> Result<f64> {
    Ok(sum_rate_from_levels(&ConstraintLevels::new(sc, xi), mode))
}

/// Same quantity as [`sum_rate_at`], projecting the numeric system afresh.
pub fn sum_rate_by_projection(sc: &Scenario, xi: PowerSplit, mode: RelayMode) -> Result<f64> {
    mode_system(sc, xi, mode).max_linear(&[1.0; 5])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateSplit {
    pub r1p: f64,
    pub r1r: f64,
    pub r2cp: f64,
    pub r2cpp: f64,
    pub r2r: f64,
}

impl RateSplit {
    pub fn r1(&self) -> f64 {
        self.r1p + self.r1r
    }

    pub fn r2(&self) -> f64 {
        self.r2cp + self.r2cpp + self.r2r
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.r1p, self.r1r, self.r2cp, self.r2cpp, self.r2r]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AchievableResult {
    pub sum_rate: f64,
    pub xi_star: PowerSplit,
    pub split: RateSplit,
    pub mode: RelayMode,
}

/// The sum-rate objective in `xi` with `xi_bar = 1 - xi`.
pub fn sum_rate_objective(sc: &Scenario, mode: RelayMode) -> impl Fn(f64) -> f64 + '_ {
    let fixed = ConstraintLevels::new(sc, PowerSplit { xi: 0.0, xi_bar: 1.0 });
    move |xi| sum_rate_from_levels(&fixed.with_split(sc, xi, 1.0 - xi), mode)
}

/// Maximize the sum rate over the relay power split.
///
/// `xi_bar = 1 - xi` throughout: for fixed `xi` both broadcast rates grow
/// with `xi_bar`, so leaving power unused never helps.
pub fn max_sum_rate(sc: &Scenario, mode: RelayMode) -> Result<AchievableResult> {
    let opt = maximize_scalar(sum_rate_objective(sc, mode), 0.0, 1.0, DEFAULT_GRID, DEFAULT_TOL)?;
    let xi_star = PowerSplit::complementary(opt.x_star)?;
    let split = optimal_split(sc, xi_star, mode, opt.f_star)?;
    Ok(AchievableResult {
        sum_rate: opt.f_star,
        xi_star,
        split,
        mode,
    })
}

/// A rate split reaching `sum_rate`, lexicographically largest in
/// (r1p, r2cpp, r2r, r1r, r2cp).
pub fn optimal_split(
    sc: &Scenario,
    xi: PowerSplit,
    mode: RelayMode,
    sum_rate: f64,
) -> Result<RateSplit> {
    let mut sys = mode_system(sc, xi, mode);
    sys.push(vec![-1.0; 5], -(sum_rate - PIN_SLACK))?;
    let mut values = [0.0; 5];
    for name in SPLIT_PREFERENCE {
        let col = sys.var_index(name)?;
        let mut objective = [0.0; 5];
        objective[col] = 1.0;
        let v = sys.max_linear(&objective)?.max(0.0);
        values[col] = v;
        let mut pin = [0.0; 5];
        pin[col] = -1.0;
        sys.push(pin.to_vec(), -(v - PIN_SLACK))?;
    }
    Ok(RateSplit {
        r1p: values[0],
        r1r: values[1],
        r2cp: values[2],
        r2cpp: values[3],
        r2r: values[4],
    })
}

/// Which OBRC link limits S1's relayed rate under the strong-interference
/// regime, and hence the form of the sum capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparableCase {
    /// The S1 -> R link out-supports R -> D1 at full relay power.
    BcBottleneck,
    /// The reverse, with S2's residual MAC rate covering its broadcast rate
    /// at the optimal power split.
    MacBottleneck,
    None,
}

/// `lhs >= rhs` with both sides recorded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl ConditionCheck {
    fn ge(lhs: f64, rhs: f64) -> Self {
        ConditionCheck {
            lhs,
            rhs,
            holds: lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparableConditions {
    pub applicable: bool,
    pub case: SeparableCase,
    pub flags: RegimeFlags,
    /// `eta_mac C(b1^2 P1R) >= eta_bc C(c1^2 PR)`
    pub s1_link: ConditionCheck,
    /// `eta_mac C(b2^2 P2R / (1 + b1^2 P1R)) >= eta_bc C(c2^2 xi_bar* PR / (1 + c2^2 xi* PR))`,
    /// evaluated only when `s1_link` fails.
    pub s2_residual: Option<ConditionCheck>,
    /// Maximizer of the MAC-bottleneck sum-rate expression.
    pub xi_star: Option<f64>,
    pub failed: Vec<String>,
}

/// `C(P1) + C(P2/(1+a12^2 P1)) + min{eta_mac C(b1^2 P1R), eta_bc C(c1^2 xi PR)}
///  + eta_bc C(c2^2 xi_bar PR / (1 + c2^2 xi PR))` with `xi_bar = 1 - xi`.
pub fn mac_bottleneck_objective(sc: &Scenario) -> impl Fn(f64) -> f64 + '_ {
    move |xi| {
        let l = ConstraintLevels::new(
            sc,
            PowerSplit {
                xi,
                xi_bar: 1.0 - xi,
            },
        );
        l.ic_sum() + l.mac_s1.min(l.bc_d1) + l.bc_d2
    }
}

fn mac_bottleneck_max(sc: &Scenario) -> Result<(f64, f64)> {
    let opt = maximize_scalar(mac_bottleneck_objective(sc), 0.0, 1.0, DEFAULT_GRID, DEFAULT_TOL)?;
    Ok((opt.f_star, opt.x_star))
}

/// Decide whether separable coding with signal relaying only is known to be
/// sum-rate optimal, and in which form.
pub fn separable_conditions(sc: &Scenario) -> Result<SeparableConditions> {
    let flags = sc.flags();
    let (g, p, bw) = (sc.gains(), sc.powers(), sc.bw());
    let mut failed = Vec::new();
    if !flags.weak_a12 {
        failed.push(format!("a12 = {} > 1", g.a12));
    }
    if !flags.bc_ordered {
        failed.push(format!("c1 = {} < c2 = {}", g.c1, g.c2));
    }
    if !flags.strong_a21 {
        failed.push(format!(
            "a21 = {} below strong-interference threshold {:.6}",
            g.a21,
            crate::channel::strong_interference_threshold(p.p1, g.a12)?
        ));
    }
    let applicable = flags.all();

    let s1_link = ConditionCheck::ge(
        bw.eta_mac * cap(g.b1 * g.b1 * p.p1r),
        bw.eta_bc * cap(g.c1 * g.c1 * p.pr),
    );
    let mut s2_residual = None;
    let mut xi_star = None;
    let case = if !applicable {
        SeparableCase::None
    } else if s1_link.holds {
        SeparableCase::BcBottleneck
    } else {
        let (_, xs) = mac_bottleneck_max(sc)?;
        xi_star = Some(xs);
        let c2sq = g.c2 * g.c2;
        let check = ConditionCheck::ge(
            bw.eta_mac * cap(g.b2 * g.b2 * p.p2r / (1.0 + g.b1 * g.b1 * p.p1r)),
            bw.eta_bc * cap(c2sq * (1.0 - xs) * p.pr / (1.0 + c2sq * xs * p.pr)),
        );
        s2_residual = Some(check);
        if check.holds {
            SeparableCase::MacBottleneck
        } else {
            failed.push(format!(
                "S2 residual MAC rate {:.6} below its broadcast rate {:.6} at xi* = {:.6}",
                check.lhs, check.rhs, xs
            ));
            SeparableCase::None
        }
    };
    Ok(SeparableConditions {
        applicable,
        case,
        flags,
        s1_link,
        s2_residual,
        xi_star,
        failed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparableCapacity {
    pub value: f64,
    pub case: SeparableCase,
    pub xi_star: Option<f64>,
}

/// Sum capacity under the separable-coding conditions.
pub fn separable_sum_capacity(sc: &Scenario) -> Result<SeparableCapacity> {
    let cond = separable_conditions(sc)?;
    let (g, p, bw) = (sc.gains(), sc.powers(), sc.bw());
    let ic = cap(p.p1) + cap(p.p2 / (1.0 + g.a12 * g.a12 * p.p1));
    match cond.case {
        SeparableCase::BcBottleneck => Ok(SeparableCapacity {
            value: ic + bw.eta_bc * cap(g.c1 * g.c1 * p.pr),
            case: cond.case,
            xi_star: None,
        }),
        SeparableCase::MacBottleneck => {
            let (value, xs) = mac_bottleneck_max(sc)?;
            Ok(SeparableCapacity {
                value,
                case: cond.case,
                xi_star: Some(xs),
            })
        }
        SeparableCase::None => Err(Error::Precondition(cond.failed)),
    }
}

/// Limit of the sum capacity as `b2, c1 -> infinity`:
/// `C(P1) + C(P2/(1+a12^2 P1)) + eta_mac C(b1^2 P1R) + eta_bc C(c2^2 PR)`.
pub fn asymptotic_sum_capacity(sc: &Scenario) -> f64 {
    let (g, p, bw) = (sc.gains(), sc.powers(), sc.bw());
    cap(p.p1)
        + cap(p.p2 / (1.0 + g.a12 * g.a12 * p.p1))
        + bw.eta_mac * cap(g.b1 * g.b1 * p.p1r)
        + bw.eta_bc * cap(g.c2 * g.c2 * p.pr)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::channel::{BandwidthSplit, ChannelGains, Powers};

    /// a12 = 0.5, b1 = 1, b2 = 10, c2 = 1, every power 10, both fractions 1.
    pub(crate) fn c1_sweep_base(a21: f64, c1: f64) -> Scenario {
        Scenario::new(
            ChannelGains {
                a12: 0.5,
                a21,
                b1: 1.0,
                b2: 10.0,
                c1,
                c2: 1.0,
            },
            Powers {
                p1: 10.0,
                p2: 10.0,
                p1r: 10.0,
                p2r: 10.0,
                pr: 10.0,
            },
            BandwidthSplit::new(1.0, 1.0).unwrap(),
        )
        .unwrap()
    }

    fn half() -> PowerSplit {
        PowerSplit::complementary(0.5).unwrap()
    }

    fn row_rhs(sys: &LinearRateSystem, k: usize) -> f64 {
        sys.ineqs()[k].rhs
    }

    #[test]
    fn pre_fm_rows() {
        let sys = pre_fm_system(&c1_sweep_base(0.9, 4.0), half());
        assert_eq!(sys.vars(), RATE_VARS);
        assert_eq!(sys.ineqs().len(), 8);
        // row (d) = C(10), row (h) = C(5/6); both from 0.5*log2(1+x)
        assert!((row_rhs(&sys, 3) - 1.729_716).abs() < 1e-6);
        assert!((row_rhs(&sys, 7) - 0.437_235).abs() < 1e-6);
        // row (c) covers both common parts
        assert_eq!(sys.ineqs()[2].coeffs, vec![0.0, 0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn xi_zero_blocks_d1_stream() {
        let sc = c1_sweep_base(0.9, 4.0);
        let sys = pre_fm_system(&sc, PowerSplit::complementary(0.0).unwrap());
        assert_eq!(row_rhs(&sys, 6), 0.0);
        let r1r = sys.max_linear(&[0.0, 1.0, 0.0, 0.0, 0.0]).unwrap();
        let r2cp = sys.max_linear(&[0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!((r1r, r2cp), (0.0, 0.0));
    }

    #[test]
    fn no_relay_power() {
        let sc = c1_sweep_base(0.9, 4.0).with_param("PR", 0.0).unwrap();
        let sys = pre_fm_system(&sc, half());
        assert_eq!(row_rhs(&sys, 6), 0.0);
        assert_eq!(row_rhs(&sys, 7), 0.0);
        assert!(row_rhs(&sys, 3) > 0.0 && row_rhs(&sys, 5) > 0.0);
    }

    #[test]
    fn closed_form_examples() {
        let sc = c1_sweep_base(0.9, 4.0);
        let r = closed_form_region(&sc, half());
        assert!((row_rhs(&r, 0) - 3.459_432).abs() < 1e-6);

        let ic_only = c1_sweep_base(0.9, 4.0)
            .with_param("PR", 0.0)
            .and_then(|s| s.with_param("P1R", 0.0))
            .and_then(|s| s.with_param("P2R", 0.0))
            .unwrap();
        let r = closed_form_region(&ic_only, PowerSplit::complementary(0.0).unwrap());
        let l = ConstraintLevels::new(&ic_only, PowerSplit::complementary(0.0).unwrap());
        assert_eq!(row_rhs(&r, 0), l.ic_private);
        assert_eq!(row_rhs(&r, 1), l.ic_common);
        assert_eq!(row_rhs(&r, 2), l.ic_joint);
        assert_eq!(row_rhs(&r, 3), l.ic_joint);
    }

    #[test]
    fn compiled_matches_projection() {
        for a21 in [0.1, 0.9, 1.8] {
            for c1 in [0.5, 1.0, 2.0, 4.0] {
                let sc = c1_sweep_base(a21, c1);
                for xi in [0.0, 0.1, 0.5, 0.9, 1.0] {
                    let xi = PowerSplit::complementary(xi).unwrap();
                    for mode in [RelayMode::SignalRelayingOnly, RelayMode::InterferenceForwarding] {
                        let fast = sum_rate_at(&sc, xi, mode).unwrap();
                        let slow = sum_rate_by_projection(&sc, xi, mode).unwrap();
                        assert!((fast - slow).abs() < 1e-12, "{a21} {c1} {xi:?} {mode:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn interference_forwarding_matches_closed_form_sum_here() {
        // at this point the rows the closed form leaves out are slack
        let sc = c1_sweep_base(0.9, 4.0);
        let l = ConstraintLevels::new(&sc, half());
        let closed = (l.ic_private + l.mac_s1 + l.ic_common + l.bc_d2)
            .min(l.ic_joint + l.bc_d1 + l.bc_d2)
            .min(l.ic_joint + l.mac_sum);
        let got = sum_rate_at(&sc, half(), RelayMode::InterferenceForwarding).unwrap();
        assert!((got - closed).abs() < 1e-12);
    }

    #[test]
    fn ic_only_sum_rate() {
        let sc = c1_sweep_base(0.9, 4.0)
            .with_param("PR", 0.0)
            .and_then(|s| s.with_param("P1R", 0.0))
            .and_then(|s| s.with_param("P2R", 0.0))
            .unwrap();
        let l = ConstraintLevels::new(&sc, half());
        let expect = l.ic_sum().min(l.ic_joint);
        for mode in [RelayMode::SignalRelayingOnly, RelayMode::InterferenceForwarding] {
            assert!((sum_rate_at(&sc, half(), mode).unwrap() - expect).abs() < 1e-12);
            let best = max_sum_rate(&sc, mode).unwrap();
            assert!((best.sum_rate - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_objective_for_equal_broadcast_gains() {
        // c1 = c2 and a strong S1 -> R link: the broadcast sum rate does not
        // depend on how the relay splits its power
        let sc = c1_sweep_base(1.8, 1.0).with_param("b1", 100.0).unwrap();
        let f = sum_rate_objective(&sc, RelayMode::SignalRelayingOnly);
        let values: Vec<f64> = (0..=100).map(|i| f(i as f64 / 100.0)).collect();
        let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - values.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(spread < 1e-9, "spread {spread}");
    }

    #[test]
    fn result_invariants() {
        for (a21, c1) in [(0.1, 3.0), (0.9, 4.0), (1.8, 2.0), (1.8, 1.0)] {
            let sc = c1_sweep_base(a21, c1);
            for mode in [RelayMode::SignalRelayingOnly, RelayMode::InterferenceForwarding] {
                let r = max_sum_rate(&sc, mode).unwrap();
                assert!((r.sum_rate - r.split.r1() - r.split.r2()).abs() < 1e-9);
                assert!(r.split.as_array().iter().all(|v| *v >= 0.0));
                let sys = mode_system(&sc, r.xi_star, mode);
                assert!(sys.contains(&r.split.as_array(), 1e-9));
                if mode == RelayMode::SignalRelayingOnly {
                    assert_eq!(r.split.r2cp, 0.0);
                }
            }
        }
    }

    #[test]
    fn split_prefers_ic_and_signal_relaying() {
        // strong interference: forwarding brings nothing, so the preferred
        // split must not use the forwarded stream
        let sc = c1_sweep_base(1.8, 3.0);
        let r = max_sum_rate(&sc, RelayMode::InterferenceForwarding).unwrap();
        let sr = max_sum_rate(&sc, RelayMode::SignalRelayingOnly).unwrap();
        assert!((r.sum_rate - sr.sum_rate).abs() < 1e-9);
        assert!(r.split.r2cp < 1e-9, "{:?}", r.split);
        let l = ConstraintLevels::new(&sc, r.xi_star);
        assert!((r.split.r1p - l.ic_private).abs() < 1e-9);
    }

    #[test]
    fn signal_relaying_never_beats_forwarding() {
        for a21 in [0.1, 0.9, 1.8] {
            for c1 in [1.0, 2.0, 5.0] {
                let sc = c1_sweep_base(a21, c1);
                for xi in [0.0, 0.3, 0.7, 1.0] {
                    let xi = PowerSplit::complementary(xi).unwrap();
                    let sr = sum_rate_at(&sc, xi, RelayMode::SignalRelayingOnly).unwrap();
                    let fw = sum_rate_at(&sc, xi, RelayMode::InterferenceForwarding).unwrap();
                    assert!(sr <= fw + 1e-12);
                }
            }
        }
    }

    #[test]
    fn separable_mac_bottleneck_example() {
        let sc = c1_sweep_base(1.8, 2.0);
        let cond = separable_conditions(&sc).unwrap();
        assert!(cond.applicable);
        assert!((cond.s1_link.lhs - 1.729_716).abs() < 1e-6);
        assert!((cond.s1_link.rhs - 2.678_776).abs() < 1e-6);
        assert!(!cond.s1_link.holds);
        let res = cond.s2_residual.unwrap();
        assert!((res.lhs - 3.261_068).abs() < 1e-6);
        assert!(res.rhs <= 1.729_716);
        assert_eq!(cond.case, SeparableCase::MacBottleneck);
    }

    #[test]
    fn separable_not_applicable_below_threshold() {
        let cond = separable_conditions(&c1_sweep_base(0.9, 2.0)).unwrap();
        assert!(!cond.applicable);
        assert_eq!(cond.case, SeparableCase::None);
        assert!(matches!(
            separable_sum_capacity(&c1_sweep_base(0.9, 2.0)),
            Err(Error::Precondition(ref f)) if f.len() == 1
        ));
    }

    #[test]
    fn separable_bc_bottleneck_with_strong_s1_link() {
        let sc = c1_sweep_base(1.8, 2.0).with_param("b1", 3.0).unwrap();
        let cond = separable_conditions(&sc).unwrap();
        assert_eq!(cond.case, SeparableCase::BcBottleneck);
    }

    #[test]
    fn separable_bc_bottleneck_tie() {
        let sc = c1_sweep_base(1.8, 2.0)
            .with_param("b1", 2.0)
            .and_then(|s| s.with_bandwidth(BandwidthSplit::new(0.5, 0.5)?))
            .unwrap();
        let cond = separable_conditions(&sc).unwrap();
        assert_eq!(cond.s1_link.lhs, cond.s1_link.rhs);
        let cap = separable_sum_capacity(&sc).unwrap();
        assert_eq!(cap.case, SeparableCase::BcBottleneck);
        // C(10) + C(10/3.5) + 0.5 C(40)
        assert!((cap.value - 4.042_870).abs() < 1e-6);
    }

    #[test]
    fn separable_capacity_without_relay_power() {
        let sc = c1_sweep_base(1.8, 2.0).with_param("PR", 0.0).unwrap();
        let cap = separable_sum_capacity(&sc).unwrap();
        let l = ConstraintLevels::new(&sc, half());
        assert_eq!(cap.case, SeparableCase::BcBottleneck);
        assert!((cap.value - l.ic_sum()).abs() < 1e-12);
    }

    #[test]
    fn separable_capacity_matches_signal_relaying() {
        let sc = c1_sweep_base(1.8, 2.0);
        let cap = separable_sum_capacity(&sc).unwrap();
        let sr = max_sum_rate(&sc, RelayMode::SignalRelayingOnly).unwrap();
        assert!((cap.value - sr.sum_rate).abs() < 1e-6);
    }

    #[test]
    fn asymptotic_examples() {
        assert!((asymptotic_sum_capacity(&c1_sweep_base(0.9, 2.0)) - 6.162_914).abs() < 1e-6);
        let zero = c1_sweep_base(0.9, 2.0)
            .with_param("PR", 0.0)
            .and_then(|s| s.with_param("P1R", 0.0))
            .unwrap();
        let l = ConstraintLevels::new(&zero, half());
        assert!((asymptotic_sum_capacity(&zero) - l.ic_sum()).abs() < 1e-15);

        let big = c1_sweep_base(0.9, 1e4).with_param("b2", 1e4).unwrap();
        let r = max_sum_rate(&big, RelayMode::InterferenceForwarding).unwrap();
        assert!((r.sum_rate - asymptotic_sum_capacity(&big)).abs() < 1e-3);
        // the optimum sits just above xi = 0; xi = 0 itself starves the
        // D1-bound stream, so the objective jumps there
        assert!(r.xi_star.xi <= 1e-6, "{}", r.xi_star.xi);
        let f = sum_rate_objective(&big, RelayMode::InterferenceForwarding);
        assert!(f(0.0) < r.sum_rate - 0.1);
    }
}
