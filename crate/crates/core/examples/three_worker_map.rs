//! The explicit three-worker map: cells, regions and derived constants.

use brigade::three_worker::{
    c4_eigenvalues, classify_cell, derived_constants, reset_map3, Point, ThreeWorkerParams,
};
use brigade::q;

fn main() -> brigade::Result<()> {
    for (r1, r2) in [(q(1, 2), q(1, 1)), (q(1, 2), q(2, 1)), (q(2, 1), q(4, 3)), (q(2, 1), q(1, 2))] {
        let p = ThreeWorkerParams::new(r1, r2)?;
        let dc = derived_constants(&p);
        println!("{p}: region {}, p* = {}", dc.region, dc.p_star);
        if let (Some(t), Some(f)) = (&dc.theta, &dc.phi) {
            println!("  theta = {t}, phi = {f}, alpha = {:?}", dc.alpha);
        }
        println!("  C4 eigenvalues: {:?}", c4_eigenvalues(&p));
        let mut s = Point::new(q(1, 10), q(3, 5));
        for _ in 0..4 {
            let next = reset_map3(&p, &s);
            println!("  {s} in {} -> {next}", classify_cell(&p, &s));
            s = next;
        }
    }
    Ok(())
}
