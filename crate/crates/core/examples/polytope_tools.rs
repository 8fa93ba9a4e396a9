// The linear-inequality toolkit on its own: build, project, maximize.

use icobr::LinearRateSystem;

pub fn run_example() -> icobr::Result<()> {
    // two users sharing a relay: x + z <= 3, y + z <= 2, z <= 1,
    // with u = x + y the total
    let mut sys = LinearRateSystem::new(&["x", "y", "z", "u"]);
    sys.push_terms(&[("x", 1.0), ("z", 1.0)], 3.0)?;
    sys.push_terms(&[("y", 1.0), ("z", 1.0)], 2.0)?;
    sys.push_terms(&[("z", 1.0)], 1.0)?;
    sys.push_equality(&[("u", 1.0), ("x", -1.0), ("y", -1.0)], 0.0)?;

    let shadow = sys.project(&["x", "u"])?;
    println!("projection onto (x, u):\n{shadow}");

    let best = sys.max_linear(&[0.0, 0.0, 0.0, 1.0])?;
    println!("max u = {best}");
    let same = sys.max_linear_in_order(&[0.0, 0.0, 0.0, 1.0], &["z", "y", "x", "u"])?;
    println!("eliminating z, y, x, u in that order: {same}");
    println!("(2.5, 2.5) inside: {}", shadow.contains(&[2.5, 2.5], 1e-9));
    Ok(())
}

#[allow(dead_code)]
fn main() -> icobr::Result<()> {
    run_example()
}
