//! Region 2: the attracting two-cycle and the stable segment through p*.

use std::cmp::Ordering;

use brigade::cycle::FloatMap;
use brigade::numerics::{float_to_f64, quad_compare};
use brigade::three_worker::{region2_stable_segment, region2_two_cycle, reset_map3, ThreeWorkerParams};
use brigade::{q, Rational};

fn main() -> brigade::Result<()> {
    let p = ThreeWorkerParams::new(q(1, 2), q(2, 1))?;
    let (a, b) = region2_two_cycle(&p)?;
    println!("two-cycle {a} <-> {b}: f(a) = {}, f(b) = {}", reset_map3(&p, &a), reset_map3(&p, &b));

    let seg = region2_stable_segment(&p)?;
    let contracting = quad_compare(&seg.eigenvalue.abs(), &Rational::one()) == Ordering::Less;
    println!("stable eigenvalue {} (|λ| < 1: {contracting}), half-length {}", seg.eigenvalue, seg.half_length);
    let map = FloatMap::new(&p, 128);
    for s in [q(-9, 10), q(0, 1), q(1, 2)] {
        let start = seg.point_at(&s);
        let mut f = (start.x.to_float(128), start.y.to_float(128));
        for _ in 0..50 {
            f = map.step(&f).1;
        }
        println!("  s = {s}: start {:?}, after 50 steps ({:.12}, {:.12})", start.to_f64(), float_to_f64(&f.0), float_to_f64(&f.1));
    }
    Ok(())
}
