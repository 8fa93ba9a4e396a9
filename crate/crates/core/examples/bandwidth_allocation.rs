// Split the relay band between listening and transmitting.

use icobr::bandwidth::{optimize_bandwidth, BwObjective};
use icobr::{BandwidthSplit, ChannelGains, Powers, Scenario};

pub fn run_example() -> icobr::Result<()> {
    for b1 in [1.0, 2.0, 8.0] {
        let sc = Scenario::new(
            ChannelGains { a12: 0.5, a21: 1.8, b1, b2: 2.0, c1: 2.0, c2: 0.3 },
            Powers { p1: 10.0, p2: 10.0, p1r: 10.0, p2r: 10.0, pr: 10.0 },
            // ignored by the optimizer
            BandwidthSplit::new(0.5, 0.5)?,
        )?;
        let sr = optimize_bandwidth(&sc, 1.0, BwObjective::AchievableSR)?;
        let ub = optimize_bandwidth(&sc, 1.0, BwObjective::UpperBound)?;
        println!(
            "b1={b1}: achievable {:.6} (eta_mac {:.4}, xi {:.4}), bound {:.6}",
            sr.rate,
            sr.eta_mac_star,
            sr.inner.xi(),
            ub.rate
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> icobr::Result<()> {
    run_example()
}
