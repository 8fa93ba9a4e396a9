// A sweep over c1 written as CSV to stdout.

use icobr::cli::{write_csv, ObjectiveName, Range, SweepSpec};
use icobr::ScenarioConfig;

pub fn run_example() -> icobr::Result<()> {
    let base: ScenarioConfig = serde_json::from_str(
        r#"{"a12":0.5,"a21":0.9,"b1":1,"b2":10,"c1":1,"c2":1,
            "P1":10,"P2":10,"P1R":10,"P2R":10,"PR":10,"eta_mac":1,"eta_bc":1}"#,
    )?;
    let spec = SweepSpec {
        base,
        param: "c1".into(),
        values: None,
        range: Some(Range { lo: 1.0, hi: 6.0, count: 11 }),
        objectives: vec![ObjectiveName::Sr, ObjectiveName::If, ObjectiveName::Ub],
        optimize_bw: false,
        eta: None,
    };
    let rows = spec.run(1)?;
    write_csv(std::io::stdout().lock(), &spec.header(), &rows)
}

#[allow(dead_code)]
fn main() -> icobr::Result<()> {
    run_example()
}
