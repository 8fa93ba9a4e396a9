//! Scenario parameters, the Gaussian capacity function and regime predicates.
//!
//! Gains are amplitudes: every SNR expression squares them. Noise power is
//! fixed to one on every link, and rates are in bits per IC channel use.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `eta_mac + eta_bc == eta`.
pub const BANDWIDTH_SUM_TOL: f64 = 1e-12;

/// `0.5 * log2(1 + snr)`.
pub fn gaussian_capacity(snr: f64) -> Result<f64> {
    if !snr.is_finite() || snr < 0.0 {
        return Err(Error::Domain(format!(
            "capacity argument must be finite and >= 0, got {snr}"
        )));
    }
    Ok(cap(snr))
}

/// Unchecked capacity for internal use where the argument is known to be a
/// nonnegative combination of validated gains and powers.
#[inline]
pub(crate) fn cap(snr: f64) -> f64 {
    0.5 * snr.ln_1p() / std::f64::consts::LN_2
}

/// Smallest `a21` for which S2 can send only common information on the IC.
pub fn strong_interference_threshold(p1: f64, a12: f64) -> Result<f64> {
    check_nonneg("P1", p1)?;
    check_nonneg("a12", a12)?;
    Ok(((1.0 + p1) / (1.0 + a12 * a12 * p1)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelGains {
    /// S1 -> D2 on the IC.
    pub a12: f64,
    /// S2 -> D1 on the IC.
    pub a21: f64,
    /// S1 -> R.
    pub b1: f64,
    /// S2 -> R.
    pub b2: f64,
    /// R -> D1.
    pub c1: f64,
    /// R -> D2.
    pub c2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Powers {
    pub p1: f64,
    pub p2: f64,
    pub p1r: f64,
    pub p2r: f64,
    pub pr: f64,
}

/// OBRC channel uses per IC channel use, split between the relay listening
/// (`eta_mac`) and transmitting (`eta_bc`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandwidthSplit {
    pub eta: f64,
    pub eta_mac: f64,
    pub eta_bc: f64,
}

impl BandwidthSplit {
    pub fn new(eta_mac: f64, eta_bc: f64) -> Result<Self> {
        let bw = BandwidthSplit {
            eta: eta_mac + eta_bc,
            eta_mac,
            eta_bc,
        };
        bw.validate()?;
        Ok(bw)
    }

    /// Split a total `eta` with `eta_mac` going to the MAC phase.
    pub fn from_total(eta: f64, eta_mac: f64) -> Result<Self> {
        check_nonneg("eta", eta)?;
        if !(0.0..=eta).contains(&eta_mac) {
            return Err(Error::InvalidField {
                field: "eta_mac".into(),
                reason: format!("must lie in [0, {eta}], got {eta_mac}"),
            });
        }
        let bw = BandwidthSplit {
            eta,
            eta_mac,
            eta_bc: eta - eta_mac,
        };
        bw.validate()?;
        Ok(bw)
    }

    pub fn validate(&self) -> Result<()> {
        check_nonneg("eta", self.eta)?;
        check_nonneg("eta_mac", self.eta_mac)?;
        check_nonneg("eta_bc", self.eta_bc)?;
        if (self.eta_mac + self.eta_bc - self.eta).abs() > BANDWIDTH_SUM_TOL {
            return Err(Error::InvalidField {
                field: "eta".into(),
                reason: format!(
                    "eta_mac + eta_bc = {} differs from eta = {}",
                    self.eta_mac + self.eta_bc,
                    self.eta
                ),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeFlags {
    /// `a12 <= 1`
    pub weak_a12: bool,
    /// `c1 >= c2`
    pub bc_ordered: bool,
    /// `a21 >= strong_interference_threshold(P1, a12)`
    pub strong_a21: bool,
}

impl RegimeFlags {
    /// The regime under which the outer bound is valid.
    pub fn bound_valid(&self) -> bool {
        self.weak_a12 && self.bc_ordered
    }

    pub fn all(&self) -> bool {
        self.weak_a12 && self.bc_ordered && self.strong_a21
    }
}

/// One validated IC-OBR instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scenario {
    gains: ChannelGains,
    powers: Powers,
    bw: BandwidthSplit,
    flags: RegimeFlags,
}

impl Scenario {
    pub fn new(gains: ChannelGains, powers: Powers, bw: BandwidthSplit) -> Result<Self> {
        let g = &gains;
        for (name, v) in [
            ("a12", g.a12),
            ("a21", g.a21),
            ("b1", g.b1),
            ("b2", g.b2),
            ("c1", g.c1),
            ("c2", g.c2),
        ] {
            check_nonneg(name, v)?;
        }
        let p = &powers;
        for (name, v) in [
            ("P1", p.p1),
            ("P2", p.p2),
            ("P1R", p.p1r),
            ("P2R", p.p2r),
            ("PR", p.pr),
        ] {
            check_nonneg(name, v)?;
        }
        bw.validate()?;
        let flags = compute_flags(&gains, &powers);
        Ok(Scenario {
            gains,
            powers,
            bw,
            flags,
        })
    }

    pub fn gains(&self) -> &ChannelGains {
        &self.gains
    }

    pub fn powers(&self) -> &Powers {
        &self.powers
    }

    pub fn bw(&self) -> &BandwidthSplit {
        &self.bw
    }

    pub fn flags(&self) -> RegimeFlags {
        self.flags
    }

    pub fn with_bandwidth(&self, bw: BandwidthSplit) -> Result<Self> {
        Scenario::new(self.gains, self.powers, bw)
    }

    /// Copy of the scenario with one named scalar replaced.
    ///
    /// Accepts the config key names. Setting `eta` rescales both fractions
    /// proportionally (or splits evenly when the old total was zero).
    pub fn with_param(&self, name: &str, value: f64) -> Result<Self> {
        let mut g = self.gains;
        let mut p = self.powers;
        let mut bw = self.bw;
        match name {
            "a12" => g.a12 = value,
            "a21" => g.a21 = value,
            "b1" => g.b1 = value,
            "b2" => g.b2 = value,
            "c1" => g.c1 = value,
            "c2" => g.c2 = value,
            "P1" => p.p1 = value,
            "P2" => p.p2 = value,
            "P1R" => p.p1r = value,
            "P2R" => p.p2r = value,
            "PR" => p.pr = value,
            "eta_mac" => bw = BandwidthSplit::new(value, bw.eta_bc)?,
            "eta_bc" => bw = BandwidthSplit::new(bw.eta_mac, value)?,
            "eta" => {
                check_nonneg("eta", value)?;
                let frac = if bw.eta > 0.0 { bw.eta_mac / bw.eta } else { 0.5 };
                bw = BandwidthSplit::from_total(value, value * frac)?;
            }
            other => return Err(Error::UnknownVariable(other.to_string())),
        }
        Scenario::new(g, p, bw)
    }

    pub fn param(&self, name: &str) -> Result<f64> {
        let (g, p, bw) = (&self.gains, &self.powers, &self.bw);
        Ok(match name {
            "a12" => g.a12,
            "a21" => g.a21,
            "b1" => g.b1,
            "b2" => g.b2,
            "c1" => g.c1,
            "c2" => g.c2,
            "P1" => p.p1,
            "P2" => p.p2,
            "P1R" => p.p1r,
            "P2R" => p.p2r,
            "PR" => p.pr,
            "eta" => bw.eta,
            "eta_mac" => bw.eta_mac,
            "eta_bc" => bw.eta_bc,
            other => return Err(Error::UnknownVariable(other.to_string())),
        })
    }
}

/// Names accepted by [`Scenario::with_param`] and [`Scenario::param`].
pub const PARAM_NAMES: [&str; 14] = [
    "a12", "a21", "b1", "b2", "c1", "c2", "P1", "P2", "P1R", "P2R", "PR", "eta", "eta_mac",
    "eta_bc",
];

pub fn regime_flags(sc: &Scenario) -> RegimeFlags {
    sc.flags
}

fn compute_flags(g: &ChannelGains, p: &Powers) -> RegimeFlags {
    let threshold = ((1.0 + p.p1) / (1.0 + g.a12 * g.a12 * p.p1)).sqrt();
    RegimeFlags {
        weak_a12: g.a12 <= 1.0,
        bc_ordered: g.c1 >= g.c2,
        strong_a21: g.a21 >= threshold,
    }
}

/// Relay power fractions for the D1-bound (`xi`) and D2-bound (`xi_bar`)
/// broadcast streams.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSplit {
    pub xi: f64,
    pub xi_bar: f64,
}

impl PowerSplit {
    pub fn new(xi: f64, xi_bar: f64) -> Result<Self> {
        check_nonneg("xi", xi)?;
        check_nonneg("xi_bar", xi_bar)?;
        // allow the sum to exceed one by rounding only
        if xi + xi_bar > 1.0 + 1e-12 {
            return Err(Error::InvalidField {
                field: "xi".into(),
                reason: format!("xi + xi_bar = {} exceeds 1", xi + xi_bar),
            });
        }
        Ok(PowerSplit { xi, xi_bar })
    }

    /// `xi_bar = 1 - xi`, the only split worth considering: both broadcast
    /// rates are nondecreasing in `xi_bar` for fixed `xi`.
    pub fn complementary(xi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::InvalidField {
                field: "xi".into(),
                reason: format!("must lie in [0, 1], got {xi}"),
            });
        }
        Ok(PowerSplit {
            xi,
            xi_bar: 1.0 - xi,
        })
    }
}

/// JSON scenario document. Keys follow the usual channel notation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub a12: f64,
    pub a21: f64,
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    #[serde(rename = "P1")]
    pub p1: f64,
    #[serde(rename = "P2")]
    pub p2: f64,
    #[serde(rename = "P1R")]
    pub p1r: f64,
    #[serde(rename = "P2R")]
    pub p2r: f64,
    #[serde(rename = "PR")]
    pub pr: f64,
    #[serde(default)]
    pub eta: Option<f64>,
    #[serde(default)]
    pub eta_mac: Option<f64>,
    #[serde(default)]
    pub eta_bc: Option<f64>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn parts(&self) -> (ChannelGains, Powers) {
        (
            ChannelGains {
                a12: self.a12,
                a21: self.a21,
                b1: self.b1,
                b2: self.b2,
                c1: self.c1,
                c2: self.c2,
            },
            Powers {
                p1: self.p1,
                p2: self.p2,
                p1r: self.p1r,
                p2r: self.p2r,
                pr: self.pr,
            },
        )
    }

    /// Build a scenario; both bandwidth fractions must be resolvable.
    ///
    /// Any two of `eta`, `eta_mac`, `eta_bc` determine the third.
    pub fn to_scenario(&self) -> Result<Scenario> {
        let bw = match (self.eta, self.eta_mac, self.eta_bc) {
            (Some(eta), Some(mac), Some(bc)) => {
                let bw = BandwidthSplit {
                    eta,
                    eta_mac: mac,
                    eta_bc: bc,
                };
                bw.validate()?;
                bw
            }
            (_, Some(mac), Some(bc)) => BandwidthSplit::new(mac, bc)?,
            (Some(eta), Some(mac), None) => BandwidthSplit::from_total(eta, mac)?,
            (Some(eta), None, Some(bc)) => {
                check_nonneg("eta_bc", bc)?;
                BandwidthSplit::from_total(eta, eta - bc)?
            }
            _ => {
                return Err(Error::InvalidField {
                    field: "eta_mac".into(),
                    reason: "bandwidth split missing: give two of eta, eta_mac, eta_bc".into(),
                })
            }
        };
        let (g, p) = self.parts();
        Scenario::new(g, p, bw)
    }

    /// Build a scenario for bandwidth optimization: only `eta` is needed and
    /// the fractions are placeholders (an even split).
    pub fn to_scenario_for_bandwidth(&self) -> Result<Scenario> {
        let eta = match (self.eta, self.eta_mac, self.eta_bc) {
            (Some(eta), _, _) => eta,
            (None, Some(mac), Some(bc)) => mac + bc,
            _ => {
                return Err(Error::InvalidField {
                    field: "eta".into(),
                    reason: "required when optimizing the bandwidth split".into(),
                })
            }
        };
        check_nonneg("eta", eta)?;
        let (g, p) = self.parts();
        Scenario::new(g, p, BandwidthSplit::from_total(eta, 0.5 * eta)?)
    }
}

impl From<&Scenario> for ScenarioConfig {
    fn from(sc: &Scenario) -> Self {
        let (g, p, bw) = (sc.gains(), sc.powers(), sc.bw());
        ScenarioConfig {
            a12: g.a12,
            a21: g.a21,
            b1: g.b1,
            b2: g.b2,
            c1: g.c1,
            c2: g.c2,
            p1: p.p1,
            p2: p.p2,
            p1r: p.p1r,
            p2r: p.p2r,
            pr: p.pr,
            eta: Some(bw.eta),
            eta_mac: Some(bw.eta_mac),
            eta_bc: Some(bw.eta_bc),
        }
    }
}

fn check_nonneg(field: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::InvalidField {
            field: field.to_string(),
            reason: format!("must be finite and >= 0, got {v}"),
        });
    }
    Ok(())
}
