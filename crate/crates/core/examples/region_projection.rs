// Project the rate-split system onto (R1, R2) and compare it with the
// closed-form region.

use icobr::achievability::{closed_form_region, mode_system, projected_region, RelayMode};
use icobr::cli::region::comparison_extent;
use icobr::regions::compare_membership;
use icobr::{BandwidthSplit, ChannelGains, PowerSplit, Powers, Scenario};

pub fn run_example() -> icobr::Result<()> {
    let sc = Scenario::new(
        ChannelGains { a12: 0.5, a21: 0.9, b1: 1.0, b2: 10.0, c1: 4.0, c2: 1.0 },
        Powers { p1: 10.0, p2: 10.0, p1r: 10.0, p2r: 10.0, pr: 10.0 },
        BandwidthSplit::new(1.0, 1.0)?,
    )?;

    for xi in [0.5, 0.05] {
        let split = PowerSplit::complementary(xi)?;
        println!("xi = {xi}");
        println!("rate-split system:\n{}", mode_system(&sc, split, RelayMode::InterferenceForwarding));
        let proj = projected_region(&sc, split, RelayMode::InterferenceForwarding)?;
        let closed = closed_form_region(&sc, split);
        println!("projected:\n{proj}");
        println!("closed form:\n{closed}");
        let rmax = comparison_extent(&proj, &closed)?;
        let cmp = compare_membership(&proj, &closed, rmax, 100, 1e-9)?;
        println!("{} of {} grid points disagree\n", cmp.disagreements, cmp.checked);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> icobr::Result<()> {
    run_example()
}
