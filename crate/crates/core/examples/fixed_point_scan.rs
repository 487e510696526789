//! Closed-form fixed point for constant speeds, and the grid scan for a
//! line whose second worker slows down halfway.

use brigade::fixed_point::{constant_velocity_fixed_point, scan_fixed_points, verify_fixed_point};
use brigade::line::{BrigadeConfig, VelocityProfile, DEFAULT_DENOM_CAP_BITS};
use brigade::q;

fn main() -> brigade::Result<()> {
    let v = [q(2, 1), q(4, 3), q(1, 1)];
    let cfg = BrigadeConfig::constant(&v)?;
    let p = constant_velocity_fixed_point(&v)?;
    println!("constant speeds {v:?}: p* = {p}, fixed: {}", verify_fixed_point(&cfg, &p));

    let slow_down = VelocityProfile::new(vec![q(0, 1), q(1, 2), q(1, 1)], vec![q(2, 1), q(1, 1)])?;
    let cfg = BrigadeConfig::new(vec![VelocityProfile::constant(q(1, 1)), slow_down], None)?;
    let report = scan_fixed_points(&cfg, &q(1, 1000), DEFAULT_DENOM_CAP_BITS)?;
    println!("{}", report.to_json()?);
    Ok(())
}
