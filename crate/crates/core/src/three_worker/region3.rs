use std::fmt;

use crate::cycle::CycleCertificate;
use crate::error::{Error, Result};
use crate::numerics::Rational;

use super::constants::{derived_constants, region3_hypothesis};
use super::map::{reset_map3, Point, ThreeWorkerParams};

/// Long-run behavior of one orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AsymptoticBehavior {
    FixedPoint,
    /// The cycle `(1,1) → (0,1) → (0,0)`.
    StandardThreeCycle,
    /// The cycle through `(0,θ)`, `(φ,φ)`, `(θ,1)`.
    OtherThreeCycle,
    TwoCycle,
    CertifiedCycle { period: usize, transient: usize, certificate: Box<CycleCertificate> },
    Unresolved { budget: usize },
}

impl AsymptoticBehavior {
    pub fn name(&self) -> &'static str {
        match self {
            AsymptoticBehavior::FixedPoint => "FixedPoint",
            AsymptoticBehavior::StandardThreeCycle => "StandardThreeCycle",
            AsymptoticBehavior::OtherThreeCycle => "OtherThreeCycle",
            AsymptoticBehavior::TwoCycle => "TwoCycle",
            AsymptoticBehavior::CertifiedCycle { .. } => "CertifiedCycle",
            AsymptoticBehavior::Unresolved { .. } => "Unresolved",
        }
    }

    pub fn period(&self) -> Option<usize> {
        match self {
            AsymptoticBehavior::FixedPoint => Some(1),
            AsymptoticBehavior::StandardThreeCycle | AsymptoticBehavior::OtherThreeCycle => Some(3),
            AsymptoticBehavior::TwoCycle => Some(2),
            AsymptoticBehavior::CertifiedCycle { period, .. } => Some(*period),
            AsymptoticBehavior::Unresolved { .. } => None,
        }
    }

    pub fn is_resolved(&self) -> bool {
        !matches!(self, AsymptoticBehavior::Unresolved { .. })
    }
}

impl fmt::Display for AsymptoticBehavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AsymptoticBehavior::CertifiedCycle { period, transient, .. } => {
                write!(f, "CertifiedCycle({period}, transient ≤ {transient})")
            }
            AsymptoticBehavior::Unresolved { budget } => write!(f, "Unresolved({budget})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Outcome of the Region-3 classifier with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region3Trace {
    pub behavior: AsymptoticBehavior,
    /// Map iterations spent before the orbit reached `x = 0`.
    pub steps_to_axis: usize,
    /// The first orbit state with `x = 0`, if one was reached.
    pub axis_state: Option<Point>,
    /// Applications of the three-step recurrence `y ↦ θ + (y−θ)·r1·r2`.
    pub recurrence_rounds: usize,
    /// Iterations from the orbit start until a cycle state is hit.
    pub transient: usize,
}

pub fn standard_cycle() -> [Point; 3] {
    let (z, o) = (Rational::zero, Rational::one);
    [Point::new(o(), o()), Point::new(z(), o()), Point::new(z(), z())]
}

/// Theorem-3 trichotomy for `r1 > r2 ≥ 1`.
pub fn classify_region3(p: &ThreeWorkerParams, s0: &Point, budget: usize) -> Result<AsymptoticBehavior> {
    Ok(classify_region3_traced(p, s0, budget)?.behavior)
}

/// Reaches a state `(0, y)` by exact iteration, then decides the basin
/// from `y` against θ, `1 − 1/r2` and α without further iteration of the
/// growing recurrence; the final hop into the standard cycle is replayed
/// exactly.
pub fn classify_region3_traced(p: &ThreeWorkerParams, s0: &Point, budget: usize) -> Result<Region3Trace> {
    if !region3_hypothesis(p) {
        return Err(Error::Precondition(format!("{p} does not satisfy r1 > r2 ≥ 1")));
    }
    if !s0.in_simplex() {
        return Err(Error::Precondition(format!("{s0} is not in the simplex")));
    }
    let c = derived_constants(p);
    let mut trace = Region3Trace {
        behavior: AsymptoticBehavior::Unresolved { budget },
        steps_to_axis: 0,
        axis_state: None,
        recurrence_rounds: 0,
        transient: 0,
    };
    if *s0 == c.p_star {
        trace.behavior = AsymptoticBehavior::FixedPoint;
        return Ok(trace);
    }
    let mut s = s0.clone();
    let mut used = 0usize;
    while !s.x.is_zero() {
        if used == budget {
            return Ok(trace);
        }
        s = reset_map3(p, &s);
        used += 1;
    }
    trace.steps_to_axis = used;
    trace.axis_state = Some(s.clone());

    let one = Rational::one();
    let theta = c.theta().expect("r1·r2 > 1 under the hypothesis").clone();
    let standard = standard_cycle();
    if *p.r2() == one {
        // θ = 0, φ = 1: the other cycle coincides with the standard one.
        return finish_standard(p, s, used, budget, &standard, trace);
    }
    if s.y == theta {
        trace.behavior = AsymptoticBehavior::OtherThreeCycle;
        trace.transient = used;
        return Ok(trace);
    }
    let alpha = c.alpha.expect("α exists when r1 > r2 > 1");
    let low = &one - one.clone() / p.r2();
    let gain = p.r1() * p.r2();
    let mut z = s.y.clone();
    while low < z && z < alpha {
        if used + 3 > budget {
            return Ok(trace);
        }
        z = &theta + (&z - &theta) * &gain;
        used += 3;
        trace.recurrence_rounds += 1;
    }
    finish_standard(p, Point::new(Rational::zero(), z), used, budget, &standard, trace)
}

fn finish_standard(
    p: &ThreeWorkerParams,
    mut s: Point,
    mut used: usize,
    budget: usize,
    standard: &[Point; 3],
    mut trace: Region3Trace,
) -> Result<Region3Trace> {
    while !standard.contains(&s) {
        if used == budget {
            return Ok(trace);
        }
        s = reset_map3(p, &s);
        used += 1;
    }
    trace.behavior = AsymptoticBehavior::StandardThreeCycle;
    trace.transient = used;
    Ok(trace)
}
