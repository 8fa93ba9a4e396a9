// When separable coding with signal relaying achieves the sum capacity.

use icobr::achievability::{asymptotic_sum_capacity, separable_conditions, separable_sum_capacity};
use icobr::{BandwidthSplit, ChannelGains, Powers, Scenario};

pub fn run_example() -> icobr::Result<()> {
    let powers = Powers { p1: 10.0, p2: 10.0, p1r: 10.0, p2r: 10.0, pr: 10.0 };
    let bw = BandwidthSplit::new(1.0, 1.0)?;
    for (a21, b1) in [(1.8, 1.0), (1.8, 3.0), (0.9, 1.0)] {
        let sc = Scenario::new(
            ChannelGains { a12: 0.5, a21, b1, b2: 10.0, c1: 2.0, c2: 1.0 },
            powers,
            bw,
        )?;
        let cond = separable_conditions(&sc)?;
        print!("a21={a21} b1={b1}: {:?}", cond.case);
        match separable_sum_capacity(&sc) {
            Ok(c) => println!(", sum capacity {:.6}", c.value),
            Err(e) => println!(", {e}"),
        }
    }

    let huge = Scenario::new(
        ChannelGains { a12: 0.5, a21: 0.9, b1: 1.0, b2: 1e4, c1: 1e4, c2: 1.0 },
        powers,
        bw,
    )?;
    println!("b2, c1 -> infinity limit: {:.6}", asymptotic_sum_capacity(&huge));
    Ok(())
}

#[allow(dead_code)]
fn main() -> icobr::Result<()> {
    run_example()
}
