// Optimize the relay power split for both relaying modes.

use icobr::achievability::{max_sum_rate, RelayMode};
use icobr::{BandwidthSplit, ChannelGains, Powers, Scenario};

pub fn run_example() -> icobr::Result<()> {
    for c1 in [1.0, 3.0, 6.0] {
        let sc = Scenario::new(
            ChannelGains { a12: 0.5, a21: 0.9, b1: 1.0, b2: 10.0, c1, c2: 1.0 },
            Powers { p1: 10.0, p2: 10.0, p1r: 10.0, p2r: 10.0, pr: 10.0 },
            BandwidthSplit::new(1.0, 1.0)?,
        )?;
        for mode in [RelayMode::SignalRelayingOnly, RelayMode::InterferenceForwarding] {
            let r = max_sum_rate(&sc, mode)?;
            let s = r.split;
            println!(
                "c1={c1} {:>2}: sum {:.6} at xi={:.4}  R1={:.4} R2={:.4} forwarded={:.4}",
                mode.short(),
                r.sum_rate,
                r.xi_star.xi,
                s.r1(),
                s.r2(),
                s.r2cp
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> icobr::Result<()> {
    run_example()
}
