use std::fmt::Write as _;
use std::path::Path;

use crate::achievability::{closed_form_region, mode_system, projected_region, RelayMode};
use crate::channel::{PowerSplit, Scenario};
use crate::error::{Error, Result};
use crate::regions::{compare_membership, LinearRateSystem, MembershipComparison};

use super::analyze::load_scenario;

/// Grid points per axis for the membership comparison.
pub const MEMBERSHIP_GRID: usize = 100;
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct RegionDump {
    pub pre_fm: LinearRateSystem,
    pub projected: LinearRateSystem,
    pub closed_form: LinearRateSystem,
    pub comparison: MembershipComparison,
    pub rmax: f64,
}

/// Grid extent covering both regions with some margin.
pub fn comparison_extent(a: &LinearRateSystem, b: &LinearRateSystem) -> Result<f64> {
    let mut m = 0.0f64;
    for sys in [a, b] {
        m = m.max(sys.max_linear(&[1.0, 0.0])?);
        m = m.max(sys.max_linear(&[0.0, 1.0])?);
    }
    Ok(if m > 0.0 { 1.1 * m } else { 1.0 })
}

pub fn region_dump(sc: &Scenario, xi: PowerSplit, mode: RelayMode) -> Result<RegionDump> {
    let pre_fm = mode_system(sc, xi, mode);
    let projected = projected_region(sc, xi, mode)?;
    let closed_form = closed_form_region(sc, xi);
    let rmax = comparison_extent(&projected, &closed_form)?;
    let comparison = compare_membership(&projected, &closed_form, rmax, MEMBERSHIP_GRID, BOUNDARY_TOL)?;
    Ok(RegionDump {
        pre_fm,
        projected,
        closed_form,
        comparison,
        rmax,
    })
}

impl RegionDump {
    pub fn render(&self, xi: PowerSplit, mode: RelayMode) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# mode {} xi {} xi_bar {}", mode.short(), xi.xi, xi.xi_bar);
        let _ = writeln!(s, "# rate-split system");
        s.push_str(&self.pre_fm.to_string());
        let _ = writeln!(s, "# projected onto (r1, r2)");
        s.push_str(&self.projected.to_string());
        let _ = writeln!(s, "# closed form");
        s.push_str(&self.closed_form.to_string());
        let c = &self.comparison;
        let _ = writeln!(
            s,
            "# membership on {n}x{n} grid over [0, {:.6}]^2: {} disagreements of {}",
            self.rmax,
            c.disagreements,
            c.checked,
            n = MEMBERSHIP_GRID
        );
        if let Some(p) = c.first {
            let _ = writeln!(s, "# first disagreement at r1={:.6} r2={:.6}", p[0], p[1]);
        }
        s
    }
}

pub fn cmd_region(config: &Path, xi: f64, mode: RelayMode, out: &Path) -> Result<RegionDump> {
    let sc = load_scenario(config)?;
    let split = PowerSplit::complementary(xi)?;
    let dump = region_dump(&sc, split, mode)?;
    std::fs::write(out, dump.render(split, mode))
        .map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    Ok(dump)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::achievability::tests::c1_sweep_base;

    #[test]
    fn zero_xi_and_signal_relaying_rows() {
        let sc = c1_sweep_base(0.9, 4.0);
        let xi = PowerSplit::complementary(0.0).unwrap();
        let d = region_dump(&sc, xi, RelayMode::SignalRelayingOnly).unwrap();
        let text = d.render(xi, RelayMode::SignalRelayingOnly);
        assert!(text.contains("1*r1r + 1*r2cp <= 0\n"), "{text}");
        assert!(text.contains("1*r2cp <= 0\n") && text.contains("-1*r2cp <= -0\n"));
    }

    #[test]
    fn regions_agree_where_broadcast_covers_the_mac() {
        let sc = c1_sweep_base(0.9, 4.0);
        let xi = PowerSplit::complementary(0.5).unwrap();
        let d = region_dump(&sc, xi, RelayMode::InterferenceForwarding).unwrap();
        assert_eq!(d.comparison.checked, 10_000);
        assert!(d.comparison.equivalent(), "{:?}", d.comparison);
    }

    #[test]
    fn closed_form_overshoots_when_broadcast_is_weak() {
        // at xi = 0 nothing reaches D1 through the relay
        let sc = c1_sweep_base(1.8, 2.0);
        let xi = PowerSplit::complementary(0.0).unwrap();
        let d = region_dump(&sc, xi, RelayMode::InterferenceForwarding).unwrap();
        assert!(!d.comparison.equivalent());
        let p = d.comparison.first.unwrap();
        assert!(d.closed_form.contains(&p, 0.0) && !d.projected.contains(&p, 0.0));
    }
}
