// Run the invariant suite on a few random scenarios.

use icobr::cli::{cmd_verify, VerifyOptions};

pub fn run_example() -> icobr::Result<()> {
    let report = cmd_verify(&VerifyOptions::new(7, 20));
    print!("{report}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> icobr::Result<()> {
    run_example()
}
