//! Four workers with piecewise-constant speeds: iterate the reset map
//! exactly and print the trajectory as CSV.

use brigade::line::{iterate, trajectory_csv, BrigadeConfig, ResetState, VelocityProfile, DEFAULT_DENOM_CAP_BITS};
use brigade::q;

fn main() -> brigade::Result<()> {
    let profiles = vec![
        VelocityProfile::constant(q(1, 1)),
        VelocityProfile::new(vec![q(0, 1), q(1, 2), q(1, 1)], vec![q(2, 1), q(3, 2)])?,
        VelocityProfile::new(vec![q(0, 1), q(1, 3), q(2, 3), q(1, 1)], vec![q(1, 1), q(5, 2), q(1, 1)])?,
        VelocityProfile::constant(q(3, 1)),
    ];
    let cfg = BrigadeConfig::new(profiles, None)?;
    let s0 = ResetState::new(vec![q(1, 10), q(1, 2), q(9, 10)])?;
    let tr = iterate(&cfg, &s0, 12, DEFAULT_DENOM_CAP_BITS);
    print!("{}", trajectory_csv(&tr));
    Ok(())
}
