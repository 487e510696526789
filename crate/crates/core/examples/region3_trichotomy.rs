//! Region 3 with v1 > v2 ≥ v3: every orbit ends at p*, the standard
//! 3-cycle, or the cycle through (0, θ).

use brigade::three_worker::{classify_region3_traced, Point, ThreeWorkerParams};
use brigade::q;

fn main() -> brigade::Result<()> {
    let p = ThreeWorkerParams::new(q(2, 1), q(4, 3))?;
    for s in [
        Point::new(q(6, 13), q(10, 13)),
        Point::new(q(0, 1), q(2, 5)),
        Point::new(q(0, 1), q(3, 10)),
        Point::new(q(1, 7), q(3, 7)),
        Point::new(q(1, 3), q(1, 3)),
    ] {
        let t = classify_region3_traced(&p, &s, 100_000)?;
        println!(
            "{s}: {} (steps to x = 0: {}, recurrence rounds: {}, transient: {})",
            t.behavior, t.steps_to_axis, t.recurrence_rounds, t.transient
        );
    }
    Ok(())
}
