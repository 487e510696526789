//! The set Σ for v3 < v1 < v2: vertices, vertex relations and a seeded
//! invariance check.

use brigade::three_worker::{sigma_invariance_check, ThreeWorkerParams};
use brigade::q;

fn main() -> brigade::Result<()> {
    let p = ThreeWorkerParams::new(q(4, 3), q(2, 1))?;
    let report = sigma_invariance_check(&p, 10_000, 0)?;
    for (name, v) in report.sigma.vertices() {
        println!("{name} = {v}");
    }
    for r in &report.relations {
        println!("{:<14} image {:<14} holds: {}", r.relation, r.image.to_string(), r.holds);
    }
    println!("{} of {} samples map outside Σ", report.violations, report.samples);
    if let Some(v) = &report.first_violation {
        println!("first: {} -> {}", v.point, v.image);
    }
    Ok(())
}
