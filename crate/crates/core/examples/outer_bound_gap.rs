// Outer bound, its active term, and the gap to the achievable rates.

use icobr::outerbound::gap_report;
use icobr::{BandwidthSplit, ChannelGains, Powers, Scenario};

pub fn run_example() -> icobr::Result<()> {
    for (a21, c1) in [(1.8, 2.0), (0.9, 5.0), (0.1, 5.0)] {
        let sc = Scenario::new(
            ChannelGains { a12: 0.5, a21, b1: 1.0, b2: 10.0, c1, c2: 1.0 },
            Powers { p1: 10.0, p2: 10.0, p1r: 10.0, p2r: 10.0, pr: 10.0 },
            BandwidthSplit::new(1.0, 1.0)?,
        )?;
        let r = gap_report(&sc)?;
        let ub = r.upper.expect("a12 <= 1 and c1 >= c2");
        println!(
            "a21={a21} c1={c1}: bound {:.6} ({:?} active), gap sr {:.6}, gap if {:.6}, settled {}",
            ub.value,
            ub.breakdown.active,
            r.gap_sr.unwrap(),
            r.gap_if.unwrap(),
            r.capacity_established
        );
        println!("  {}", ub.breakdown.active.derivation());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> icobr::Result<()> {
    run_example()
}
