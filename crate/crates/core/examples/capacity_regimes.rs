// Gaussian capacity, the strong-interference threshold and regime flags.

use icobr::{
    gaussian_capacity, regime_flags, strong_interference_threshold, BandwidthSplit, ChannelGains,
    Powers, Scenario,
};

pub fn run_example() -> icobr::Result<()> {
    for snr in [0.0, 1.0, 10.0, 100.0] {
        println!("C({snr}) = {:.6} bits/use", gaussian_capacity(snr)?);
    }

    let th = strong_interference_threshold(10.0, 0.5)?;
    println!("a21 threshold at P1 = 10, a12 = 0.5: {th:.6}");

    for a21 in [0.9, 1.8] {
        let sc = Scenario::new(
            ChannelGains { a12: 0.5, a21, b1: 1.0, b2: 10.0, c1: 2.0, c2: 1.0 },
            Powers { p1: 10.0, p2: 10.0, p1r: 10.0, p2r: 10.0, pr: 10.0 },
            BandwidthSplit::new(1.0, 1.0)?,
        )?;
        println!("a21 = {a21}: {:?}", regime_flags(&sc));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> icobr::Result<()> {
    run_example()
}
