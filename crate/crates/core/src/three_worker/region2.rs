use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numerics::{QuadraticReal, Rational};

use super::constants::{c4_eigenvalues, p_star, C4Eigenvalues};
use super::map::{Point, Region, ThreeWorkerParams};

fn require_r2(p: &ThreeWorkerParams) -> Result<()> {
    match p.region() {
        Region::R2 => Ok(()),
        other => Err(Error::Precondition(format!("parameters {p} lie in {other}, not R2"))),
    }
}

/// The alternating pair `(r1/(r1+1), 1) ↔ (0, r1/(r1+1))`.
pub fn region2_two_cycle(p: &ThreeWorkerParams) -> Result<(Point, Point)> {
    require_r2(p)?;
    let u = p.r1() / (p.r1() + Rational::one());
    Ok((Point::new(u.clone(), Rational::one()), Point::new(Rational::zero(), u)))
}

/// Point with coordinates in `Q(√d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPoint {
    pub x: QuadraticReal,
    pub y: QuadraticReal,
}

impl QuadraticPoint {
    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

/// The part of the stable line of p* that stays strictly inside C4,
/// symmetric about p*: `p* + t·direction` for `|t| < half_length`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableSegment {
    pub p_star: Point,
    pub eigenvalue: QuadraticReal,
    pub unstable_eigenvalue: QuadraticReal,
    pub direction: [QuadraticReal; 2],
    pub half_length: QuadraticReal,
    pub endpoint_lo: QuadraticPoint,
    pub endpoint_hi: QuadraticPoint,
}

impl StableSegment {
    /// `p* + s·half_length·direction`; inside the open segment for `|s| < 1`.
    pub fn point_at(&self, s: &Rational) -> QuadraticPoint {
        point_on(&self.p_star, &self.half_length, &self.direction, s)
    }
}

pub fn region2_stable_segment(p: &ThreeWorkerParams) -> Result<StableSegment> {
    require_r2(p)?;
    let (stable, unstable) = match c4_eigenvalues(p) {
        C4Eigenvalues::Real { lambda_plus, lambda_minus } => (lambda_plus, lambda_minus),
        C4Eigenvalues::Complex { .. } => unreachable!("R2 has r2² − 4·r1 > 0"),
    };
    let one = Rational::one();
    if stable.abs().cmp_rational(&one) != Ordering::Less {
        return Err(Error::Precondition(format!("no contracting C4 eigenvalue at {p}")));
    }
    // (M − λI)·(r1, −λ) = 0.
    let direction = [QuadraticReal::from_rational(p.r1().clone()), stable.neg()];
    let ps = p_star(p);
    let (r1, r2) = (p.r1(), p.r2());
    // Each constraint g(x, y) = g0 + gx·x + gy·y must stay nonnegative
    // (C4 is b ≤ a < 1, Δ is 0 ≤ x ≤ y ≤ 1).
    let constraints: [(Rational, Rational, Rational); 5] = [
        (r2 - r1, one.clone(), r1 - r2),
        (&one - r2, -one.clone(), r2.clone()),
        (Rational::zero(), one.clone(), Rational::zero()),
        (Rational::zero(), -one.clone(), one.clone()),
        (one.clone(), Rational::zero(), -one.clone()),
    ];
    let mut half_length: Option<QuadraticReal> = None;
    for (g0, gx, gy) in constraints {
        let at_p = &g0 + &gx * &ps.x + &gy * &ps.y;
        let slope = direction[0].scale(&gx).checked_add(&direction[1].scale(&gy))?;
        if slope.signum() == Ordering::Equal {
            continue;
        }
        let t = QuadraticReal::from_rational(-at_p).checked_div(&slope)?.abs();
        half_length = Some(match half_length {
            Some(best) if best.checked_cmp(&t)? != Ordering::Greater => best,
            _ => t,
        });
    }
    let half_length = half_length.expect("the direction is not parallel to every constraint");
    let endpoint = |s: i64| point_on(&ps, &half_length, &direction, &Rational::from(s));
    let (endpoint_lo, endpoint_hi) = (endpoint(-1), endpoint(1));
    Ok(StableSegment {
        p_star: ps,
        eigenvalue: stable,
        unstable_eigenvalue: unstable,
        direction,
        half_length,
        endpoint_lo,
        endpoint_hi,
    })
}

fn point_on(ps: &Point, half_length: &QuadraticReal, direction: &[QuadraticReal; 2], s: &Rational) -> QuadraticPoint {
    let t = half_length.scale(s);
    let along = |k: usize| t.checked_mul(&direction[k]).expect("shared radicand");
    QuadraticPoint { x: along(0).add_rational(&ps.x), y: along(1).add_rational(&ps.y) }
}
