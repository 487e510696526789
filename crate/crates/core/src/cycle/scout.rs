use malachite::Float;

use crate::numerics::{float_abs, Rational};
use crate::three_worker::{AsymptoticBehavior, Cell, Point, ThreeWorkerParams};

use super::certify::{certify_cycle, CellItinerary, CycleCertificate};
use super::homogeneous::{HomParams, HomState};

/// Default scouting mantissa, in bits.
pub const SCOUT_PRECISION: u64 = 128;

/// Cell-boundary and state-equality tolerance, `2^-64`.
pub const SCOUT_EPSILON_EXP: i64 = -64;

/// The reset map in binary floating point. Values within ε of each other
/// compare as equal, and the strict/weak placement of each cell condition
/// is then applied as written.
#[derive(Clone, Debug)]
pub struct FloatMap {
    r1: Float,
    r2: Float,
    one: Float,
    eps: Float,
    prec: u64,
}

/// A scouted state.
pub type FloatPoint = (Float, Float);

impl FloatMap {
    pub fn new(p: &ThreeWorkerParams, prec: u64) -> Self {
        FloatMap {
            r1: p.r1().to_float(prec),
            r2: p.r2().to_float(prec),
            one: Rational::one().to_float(prec),
            eps: Float::power_of_2_prec(SCOUT_EPSILON_EXP, prec).0,
            prec,
        }
    }

    pub fn precision(&self) -> u64 {
        self.prec
    }

    pub fn point(&self, s: &Point) -> FloatPoint {
        (s.x.to_float(self.prec), s.y.to_float(self.prec))
    }

    fn lt(&self, a: &Float, b: &Float) -> bool {
        a < &(b - &self.eps)
    }

    fn le(&self, a: &Float, b: &Float) -> bool {
        a <= &(b + &self.eps)
    }

    pub fn step(&self, s: &FloatPoint) -> (Cell, FloatPoint) {
        let rest = &self.one - &s.1;
        let a = &s.0 + &(&rest * &self.r2);
        let b = &rest * &self.r1;
        let cell = if self.lt(&a, &self.one) {
            if self.le(&b, &a) {
                Cell::C4
            } else {
                Cell::C3
            }
        } else if self.lt(&b, &self.one) {
            Cell::C2
        } else {
            Cell::C1
        };
        let image = match cell {
            Cell::C1 => (self.one.clone(), self.one.clone()),
            Cell::C2 => (b, self.one.clone()),
            Cell::C3 => (a.clone(), a),
            Cell::C4 => (b, a),
        };
        (cell, image)
    }

    pub fn close(&self, a: &FloatPoint, b: &FloatPoint) -> bool {
        float_abs(&(&a.0 - &b.0)) <= self.eps && float_abs(&(&a.1 - &b.1)) <= self.eps
    }
}

/// A proposed eventually-periodic orbit: `transient` steps reach a state
/// that recurs (within ε) every `period` steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoutCandidate {
    pub transient: usize,
    pub period: usize,
}

/// Brent's cycle detection on the floating orbit of `s0`, spending at most
/// `budget` map evaluations.
pub fn scout_orbit(p: &ThreeWorkerParams, s0: &Point, budget: usize, prec: u64) -> Option<ScoutCandidate> {
    let map = FloatMap::new(p, prec.max(SCOUT_PRECISION));
    let start = map.point(s0);
    let mut used = 0usize;
    let mut power = 1usize;
    let mut lam = 1usize;
    let mut tortoise = start.clone();
    let mut hare = map.step(&start).1;
    used += 1;
    while !map.close(&tortoise, &hare) {
        if used >= budget {
            return None;
        }
        if power == lam {
            tortoise = hare.clone();
            power *= 2;
            lam = 0;
        }
        hare = map.step(&hare).1;
        used += 1;
        lam += 1;
    }
    let mut tortoise = start.clone();
    let mut hare = start;
    for _ in 0..lam {
        hare = map.step(&hare).1;
    }
    let mut mu = 0usize;
    while !map.close(&tortoise, &hare) {
        if used >= budget.saturating_mul(2) {
            return None;
        }
        tortoise = map.step(&tortoise).1;
        hare = map.step(&hare).1;
        used += 2;
        mu += 1;
    }
    Some(ScoutCandidate { transient: mu, period: lam })
}

/// Cells visited by the floating orbit during `[skip, skip + len)`.
pub fn float_itinerary(p: &ThreeWorkerParams, s0: &Point, skip: usize, len: usize, prec: u64) -> Vec<Cell> {
    let map = FloatMap::new(p, prec.max(SCOUT_PRECISION));
    let mut s = map.point(s0);
    for _ in 0..skip {
        s = map.step(&s).1;
    }
    let mut cells = Vec::with_capacity(len);
    for _ in 0..len {
        let (c, next) = map.step(&s);
        cells.push(c);
        s = next;
    }
    cells
}

/// Bit length up to which the exact periodicity probe of
/// [`find_certified_cycle`] keeps iterating.
fn probe_cap_bits(s0: &Point) -> u64 {
    4 * s0.max_denominator_bits() + 4096
}

/// Exact check whether `s0` is itself periodic, stopping once the
/// unreduced denominators pass `cap_bits`.
fn exact_period_of(p: &ThreeWorkerParams, s0: &Point, budget: usize, cap_bits: u64) -> Option<Vec<Cell>> {
    let h = HomParams::new(p);
    let start = HomState::from_point(s0);
    let mut hs = start.clone();
    let mut cells = Vec::new();
    // Cheap modular prefilter before the full projective comparison.
    let m = malachite::Integer::from(0xffff_ffff_ffff_ffc5u64);
    let (sx, sy, sw) = (&start.x % &m, &start.y % &m, &start.w % &m);
    for _ in 0..budget {
        cells.push(hs.step(&h));
        if hs.bits() > cap_bits {
            return None;
        }
        let (hx, hy, hw) = (&hs.x % &m, &hs.y % &m, &hs.w % &m);
        if (&hx * &sw - &sx * &hw) % &m == 0u32
            && (&hy * &sw - &sy * &hw) % &m == 0u32
            && hs.same_point(&start)
        {
            return Some(cells);
        }
    }
    None
}

/// Scout, extract one period of cells, certify.
///
/// An exact probe first checks whether `s0` is itself periodic (this is
/// the only way to recognise repelling cycles, which floating orbits
/// leave). Otherwise Brent's method runs at [`SCOUT_PRECISION`] bits and,
/// if certification fails, once more at twice that precision.
pub fn find_certified_cycle(p: &ThreeWorkerParams, s0: &Point, budget: usize) -> AsymptoticBehavior {
    if let Some(cells) = exact_period_of(p, s0, budget, probe_cap_bits(s0)) {
        let it = CellItinerary::new(cells).expect("at least one step");
        if let Ok(mut cert) = certify_cycle(p, &it) {
            cert.transient_bound = Some(0);
            return certified(cert, 0);
        }
    }
    for prec in [SCOUT_PRECISION, 2 * SCOUT_PRECISION] {
        if let Some(cert) = scout_and_certify(p, s0, budget, prec) {
            let transient = cert.transient_bound.unwrap_or(0);
            return certified(cert, transient);
        }
    }
    AsymptoticBehavior::Unresolved { budget }
}

fn certified(cert: CycleCertificate, transient: usize) -> AsymptoticBehavior {
    AsymptoticBehavior::CertifiedCycle { period: cert.period, transient, certificate: Box::new(cert) }
}

fn scout_and_certify(p: &ThreeWorkerParams, s0: &Point, budget: usize, prec: u64) -> Option<CycleCertificate> {
    let cand = scout_orbit(p, s0, budget, prec)?;
    let cells = float_itinerary(p, s0, cand.transient, cand.period, prec);
    let it = CellItinerary::new(cells).ok()?;
    let mut cert = certify_cycle(p, &it).ok()?;
    cert.transient_bound = Some(cand.transient);
    Some(cert)
}
