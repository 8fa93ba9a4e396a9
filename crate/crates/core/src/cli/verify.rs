use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::achievability::{
    closed_form_region, mode_system, projected_region, separable_conditions,
    separable_sum_capacity, sum_rate_at, sum_rate_by_projection, sum_rate_objective, RelayMode,
    SeparableCase, RATE_VARS,
};
use crate::bandwidth::{evaluate_at, optimize_bandwidth, BwObjective};
use crate::channel::{
    cap, strong_interference_threshold, BandwidthSplit, ChannelGains, PowerSplit, Powers, Scenario,
    ScenarioConfig,
};
use crate::error::Result;
use crate::numerics::{maximize_scalar, DEFAULT_GRID, DEFAULT_TOL};
use crate::outerbound::{bound_objective, sum_rate_upper_bound};
use crate::regions::compare_membership;

use super::analyze::analyze;
use super::region::{comparison_extent, BOUNDARY_TOL, MEMBERSHIP_GRID};
use super::sweep::SweepSpec;

/// Scenarios that also get the (slower) region-equivalence check.
pub const REGION_SUBSET: usize = 100;
/// Scenarios that also get the nested bandwidth optimization.
pub const BANDWIDTH_SUBSET: usize = 3;
/// Power splits at which regions are compared.
pub const REGION_XIS: [f64; 3] = [0.1, 0.5, 0.9];

const ORDER_TOL: f64 = 1e-9;
const DOMINANCE_TOL: f64 = 1e-9;
const EQUALITY_TOL: f64 = 1e-6;
const MONOTONE_PARAMS: [&str; 7] = ["PR", "P1R", "P2R", "b1", "b2", "c1", "c2"];
const BOUND_MONOTONE_PARAMS: [&str; 10] =
    ["a21", "b1", "b2", "c1", "c2", "P1", "P2", "P1R", "P2R", "PR"];

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..=hi.ln())).exp()
}

/// Random scenario with `a12 <= 1` and `c1 >= c2`.
///
/// Gains are log-uniform on `[0.1, 10]` (`a12` on `[0.1, 1]`), powers on
/// `[0.1, 100]`, `eta = 1` with `eta_mac` uniform.
pub fn random_scenario(rng: &mut impl Rng) -> Scenario {
    let a12 = log_uniform(rng, 0.1, 1.0);
    let mut g = [0.0; 5];
    for x in &mut g {
        *x = log_uniform(rng, 0.1, 10.0);
    }
    let mut p = [0.0; 5];
    for x in &mut p {
        *x = log_uniform(rng, 0.1, 100.0);
    }
    let eta_mac: f64 = rng.gen_range(0.0..=1.0);
    let (c1, c2) = if g[3] >= g[4] { (g[3], g[4]) } else { (g[4], g[3]) };
    Scenario::new(
        ChannelGains {
            a12,
            a21: g[0],
            b1: g[1],
            b2: g[2],
            c1,
            c2,
        },
        Powers {
            p1: p[0],
            p2: p[1],
            p1r: p[2],
            p2r: p[3],
            pr: p[4],
        },
        BandwidthSplit::from_total(1.0, eta_mac).expect("eta_mac drawn in [0, 1]"),
    )
    .expect("sampled parameters are valid")
}

/// Achievable sum rate, replaceable for negative-control runs.
pub type AchievableFn = fn(&Scenario, RelayMode) -> Result<f64>;

pub fn achievable_sum_rate(sc: &Scenario, mode: RelayMode) -> Result<f64> {
    Ok(maximize_scalar(sum_rate_objective(sc, mode), 0.0, 1.0, DEFAULT_GRID, DEFAULT_TOL)?.f_star)
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub n: usize,
    pub achievable: AchievableFn,
}

impl VerifyOptions {
    pub fn new(seed: u64, n: usize) -> Self {
        VerifyOptions {
            seed,
            n,
            achievable: achievable_sum_rate,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantOutcome {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    pub first_counterexample: Option<String>,
}

impl InvariantOutcome {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub n: usize,
    pub outcomes: Vec<InvariantOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(InvariantOutcome::passed)
    }

    pub fn outcome(&self, name: &str) -> Option<&InvariantOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify seed={} n={}", self.seed, self.n)?;
        for o in &self.outcomes {
            if o.passed() {
                writeln!(f, "PASS {} ({} checks)", o.name, o.checked)?;
            } else {
                writeln!(f, "FAIL {} ({} of {} checks)", o.name, o.failed, o.checked)?;
                if let Some(c) = &o.first_counterexample {
                    writeln!(f, "     first counterexample: {c}")?;
                }
            }
        }
        let failed = self.outcomes.iter().filter(|o| !o.passed()).count();
        writeln!(f, "{} invariants, {} failed", self.outcomes.len(), failed)
    }
}

struct Tally {
    outcomes: Vec<InvariantOutcome>,
}

impl Tally {
    fn record(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let idx = match self.outcomes.iter().position(|o| o.name == name) {
            Some(i) => i,
            None => {
                self.outcomes.push(InvariantOutcome {
                    name,
                    checked: 0,
                    failed: 0,
                    first_counterexample: None,
                });
                self.outcomes.len() - 1
            }
        };
        let o = &mut self.outcomes[idx];
        o.checked += 1;
        if !ok {
            o.failed += 1;
            if o.first_counterexample.is_none() {
                o.first_counterexample = Some(detail());
            }
        }
    }

    /// Errors count as failures of the invariant being checked.
    fn check(&mut self, name: &'static str, sc: &Scenario, res: Result<(bool, String)>) {
        match res {
            Ok((ok, msg)) => self.record(name, ok, || format!("{msg}; scenario {}", describe(sc))),
            Err(e) => self.record(name, false, || format!("error {e}; scenario {}", describe(sc))),
        }
    }
}

fn describe(sc: &Scenario) -> String {
    serde_json::to_string(&ScenarioConfig::from(sc)).unwrap_or_default()
}

fn per_scenario(t: &mut Tally, opts: &VerifyOptions, k: usize, sc: &Scenario, rng: &mut ChaCha8Rng) {
    let ach = opts.achievable;
    let g = sc.gains();
    let p = sc.powers();

    // capacity chain rule on a random pair
    let a = log_uniform(rng, 1e-3, 1e3);
    let b = log_uniform(rng, 1e-3, 1e3);
    let lhs = cap(a) + cap(b / (1.0 + a));
    t.record("capacity_chain_rule", (lhs - cap(a + b)).abs() <= 1e-12, || {
        format!("a={a} b={b}: {lhs} vs {}", cap(a + b))
    });

    t.check(
        "threshold_range",
        sc,
        strong_interference_threshold(p.p1, g.a12).map(|th| {
            let ok = th >= 1.0 && th <= (1.0 + p.p1).sqrt();
            (ok, format!("threshold {th}"))
        }),
    );

    // elimination order does not change the optimum
    let xi = PowerSplit::complementary(rng.gen_range(0.0..=1.0)).unwrap();
    t.check(
        "elimination_order_invariance",
        sc,
        (|| {
            let sys = mode_system(sc, xi, RelayMode::InterferenceForwarding);
            let obj = [1.0; 5];
            let greedy = sys.max_linear(&obj)?;
            let fwd = sys.max_linear_in_order(&obj, &RATE_VARS)?;
            let mut rev = RATE_VARS;
            rev.reverse();
            let bwd = sys.max_linear_in_order(&obj, &rev)?;
            let ok = (greedy - fwd).abs() <= ORDER_TOL && (greedy - bwd).abs() <= ORDER_TOL;
            Ok((ok, format!("xi={} greedy {greedy} forward {fwd} reverse {bwd}", xi.xi)))
        })(),
    );

    t.check(
        "compiled_matches_elimination",
        sc,
        (|| {
            let mut ok = true;
            let mut msg = String::new();
            for mode in [RelayMode::SignalRelayingOnly, RelayMode::InterferenceForwarding] {
                let fast = sum_rate_at(sc, xi, mode)?;
                let slow = sum_rate_by_projection(sc, xi, mode)?;
                if (fast - slow).abs() > ORDER_TOL {
                    ok = false;
                    msg = format!("{} xi={}: {fast} vs {slow}", mode.short(), xi.xi);
                }
            }
            Ok((ok, msg))
        })(),
    );

    if k < REGION_SUBSET {
        for &x in &REGION_XIS {
            t.check(
                "region_equivalence",
                sc,
                (|| {
                    let xi = PowerSplit::complementary(x)?;
                    let proj = projected_region(sc, xi, RelayMode::InterferenceForwarding)?;
                    let closed = closed_form_region(sc, xi);
                    let rmax = comparison_extent(&proj, &closed)?;
                    let c = compare_membership(&proj, &closed, rmax, MEMBERSHIP_GRID, BOUNDARY_TOL)?;
                    Ok((
                        c.equivalent(),
                        format!(
                            "xi={x}: {} of {} points disagree, first at {:?}",
                            c.disagreements, c.checked, c.first
                        ),
                    ))
                })(),
            );
        }
    }

    let sr = ach(sc, RelayMode::SignalRelayingOnly);
    let ifw = ach(sc, RelayMode::InterferenceForwarding);
    let ub = sum_rate_upper_bound(sc);
    t.check(
        "sr_le_if",
        sc,
        match (&sr, &ifw) {
            (Ok(s), Ok(i)) => Ok((*s <= i + DOMINANCE_TOL, format!("sr {s} if {i}"))),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        },
    );
    t.check(
        "achievable_le_bound",
        sc,
        match (&sr, &ifw, &ub) {
            (Ok(s), Ok(i), Ok(u)) => Ok((
                s.max(*i) <= u.value + DOMINANCE_TOL,
                format!("sr {s} if {i} bound {}", u.value),
            )),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => Err(e.clone()),
        },
    );

    if let (Ok(cond), Ok(s), Ok(u)) = (separable_conditions(sc), &sr, &ub) {
        if cond.case != SeparableCase::None {
            t.check(
                "separable_capacity_met",
                sc,
                separable_sum_capacity(sc).map(|c| {
                    let ok = (s - c.value).abs() <= EQUALITY_TOL && (c.value - u.value).abs() <= EQUALITY_TOL;
                    (ok, format!("{:?}: sr {s} capacity {} bound {}", c.case, c.value, u.value))
                }),
            );
        }
    }

    // one parameter per scenario, round robin
    let name = MONOTONE_PARAMS[k % MONOTONE_PARAMS.len()];
    t.check(
        "achievable_monotone",
        sc,
        (|| {
            let up = sc.with_param(name, sc.param(name)? * 1.25)?;
            let mut ok = true;
            let mut msg = String::new();
            for mode in [RelayMode::SignalRelayingOnly, RelayMode::InterferenceForwarding] {
                let (lo, hi) = (ach(sc, mode)?, ach(&up, mode)?);
                if hi < lo - DOMINANCE_TOL {
                    ok = false;
                    msg = format!("{} drops from {lo} to {hi} when {name} grows 25%", mode.short());
                }
            }
            Ok((ok, msg))
        })(),
    );

    let name = BOUND_MONOTONE_PARAMS[k % BOUND_MONOTONE_PARAMS.len()];
    if let Ok(u) = &ub {
        let up = sc.with_param(name, sc.param(name).unwrap_or(0.0) * 1.25);
        // raising c2 can leave the bound's regime; nothing to compare then
        if let Ok(hi) = up.and_then(|s| sum_rate_upper_bound(&s)) {
            t.record("bound_monotone", hi.value >= u.value - DOMINANCE_TOL, || {
                format!(
                    "bound drops from {} to {} when {name} grows 25%; scenario {}",
                    u.value,
                    hi.value,
                    describe(sc)
                )
            });
        }
    }

    t.check(
        "bound_refined_beats_grid",
        sc,
        (|| {
            let f = bound_objective(sc)?;
            let grid = (0..DEFAULT_GRID)
                .map(|i| f(i as f64 / (DEFAULT_GRID - 1) as f64))
                .fold(f64::NEG_INFINITY, f64::max);
            let u = sum_rate_upper_bound(sc)?;
            Ok((u.value >= grid, format!("refined {} grid {grid}", u.value)))
        })(),
    );

    t.check(
        "optimizer_deterministic",
        sc,
        (|| {
            let a = maximize_scalar(sum_rate_objective(sc, RelayMode::InterferenceForwarding), 0.0, 1.0, DEFAULT_GRID, DEFAULT_TOL)?;
            let b = maximize_scalar(sum_rate_objective(sc, RelayMode::InterferenceForwarding), 0.0, 1.0, DEFAULT_GRID, DEFAULT_TOL)?;
            Ok((a == b, format!("{a:?} vs {b:?}")))
        })(),
    );

    if k < BANDWIDTH_SUBSET {
        for obj in [BwObjective::AchievableSR, BwObjective::UpperBound] {
            t.check(
                "bandwidth_optimum",
                sc,
                (|| {
                    let r = optimize_bandwidth(sc, 1.0, obj)?;
                    let even = evaluate_at(sc, 1.0, 0.5, obj)?;
                    let again = evaluate_at(sc, 1.0, r.eta_mac_star, obj)?;
                    let ok = r.rate >= even && (again - r.rate).abs() <= 1e-9;
                    Ok((ok, format!("{}: rate {} even split {even} re-evaluated {again}", obj.short(), r.rate)))
                })(),
            );
        }
        t.check(
            "bandwidth_achievable_le_bound",
            sc,
            (|| {
                let a = optimize_bandwidth(sc, 1.0, BwObjective::AchievableIF)?;
                let u = optimize_bandwidth(sc, 1.0, BwObjective::UpperBound)?;
                Ok((a.rate <= u.rate + DOMINANCE_TOL, format!("achievable {} bound {}", a.rate, u.rate)))
            })(),
        );
        t.check(
            "analysis_matches_modules",
            sc,
            (|| {
                let r = analyze(sc)?;
                let ub = sum_rate_upper_bound(sc)?;
                let ok = r.upper_bound == Some(ub)
                    && r.signal_relaying.sum_rate == achievable_sum_rate(sc, RelayMode::SignalRelayingOnly)?;
                Ok((ok, "report differs from direct calls".into()))
            })(),
        );
    }
}

fn global_checks(t: &mut Tally) {
    // capacity increasing and concave on a log-spaced grid
    let xs: Vec<f64> = (0..=60).map(|i| 10f64.powf(-3.0 + 0.1 * i as f64)).collect();
    let mut ok = true;
    for w in xs.windows(3) {
        let (f0, f1, f2) = (cap(w[0]), cap(w[1]), cap(w[2]));
        let s01 = (f1 - f0) / (w[1] - w[0]);
        let s12 = (f2 - f1) / (w[2] - w[1]);
        ok &= s01 > 0.0 && s12 > 0.0 && s12 < s01;
    }
    t.record("capacity_increasing_concave", ok, || "finite differences".into());

    // large b2 and c1 push the forwarding optimum to xi -> 0
    let sc = Scenario::new(
        ChannelGains {
            a12: 0.5,
            a21: 0.9,
            b1: 1.0,
            b2: 1e4,
            c1: 1e4,
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
    .unwrap();
    let opt = maximize_scalar(sum_rate_objective(&sc, RelayMode::InterferenceForwarding), 0.0, 1.0, DEFAULT_GRID, DEFAULT_TOL);
    t.check(
        "forwarding_optimum_near_zero",
        &sc,
        opt.map(|o| (o.x_star <= 1e-6, format!("xi* = {}", o.x_star))),
    );

    // worker count does not change sweep output
    let spec = SweepSpec {
        base: ScenarioConfig::from(&sc),
        param: "c1".into(),
        values: Some(vec![1.0, 2.0, 3.0]),
        range: None,
        objectives: vec![super::sweep::ObjectiveName::Sr, super::sweep::ObjectiveName::Ub],
        optimize_bw: false,
        eta: None,
    };
    let same = match (spec.run(1), spec.run(2)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    t.record("sweep_deterministic", same, || "outputs differ between 1 and 2 workers".into());
}

pub fn cmd_verify(opts: &VerifyOptions) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut t = Tally { outcomes: Vec::new() };
    global_checks(&mut t);
    for k in 0..opts.n {
        let sc = random_scenario(&mut rng);
        per_scenario(&mut t, opts, k, &sc, &mut rng);
    }
    VerifyReport {
        seed: opts.seed,
        n: opts.n,
        outcomes: t.outcomes,
    }
}
