//! Repelling cycles cannot be found by following an orbit until it
//! repeats. Instead, follow a long orbit and look for near-returns at a
//! fixed lag `P`: times `t` with `s_t ≈ s_{t+P}`. By shadowing, a genuine
//! `P`-cycle with the same cell itinerary lies nearby, and exact
//! certification decides whether it exists.

use crate::numerics::float_to_f64;
use crate::three_worker::{Cell, Point, ThreeWorkerParams};

use super::certify::{certify_cycle, CellItinerary, CertifyError, CycleCertificate};
use super::scout::{float_itinerary, scout_orbit, FloatMap, SCOUT_PRECISION};

/// A window `[start, start + lag)` of the orbit whose end returns close
/// to its beginning.
#[derive(Clone, Debug, PartialEq)]
pub struct NearReturn {
    pub start: usize,
    /// Max-norm distance `|s_start − s_{start+lag}|`.
    pub gap: f64,
    pub itinerary: CellItinerary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NearReturnOptions {
    pub lag: usize,
    pub orbit_len: usize,
    /// Number of best, pairwise non-overlapping windows to keep.
    pub keep: usize,
    pub prec: u64,
}

/// The `keep` smallest-gap windows of lag `lag` along `orbit_len` steps.
pub fn near_return_search(p: &ThreeWorkerParams, s0: &Point, opts: &NearReturnOptions) -> Vec<NearReturn> {
    let lag = opts.lag;
    assert!(lag >= 1, "lag must be positive");
    let map = FloatMap::new(p, opts.prec.max(SCOUT_PRECISION));
    let mut s = map.point(s0);
    let mut pos = vec![(0.0f64, 0.0f64); lag];
    let mut cells = vec![Cell::C1; lag];
    let mut best: Vec<NearReturn> = Vec::new();
    for t in 0..opts.orbit_len {
        let here = (float_to_f64(&s.0), float_to_f64(&s.1));
        let slot = t % lag;
        if t >= lag {
            let then = pos[slot];
            let gap = (here.0 - then.0).abs().max((here.1 - then.1).abs());
            let worst = if best.len() < opts.keep { f64::INFINITY } else { best[best.len() - 1].gap };
            if gap < worst {
                let start = t - lag;
                // Ring order starting at the window's first state.
                let mut window = Vec::with_capacity(lag);
                window.extend_from_slice(&cells[slot..]);
                window.extend_from_slice(&cells[..slot]);
                let cand = NearReturn { start, gap, itinerary: CellItinerary::new(window).expect("lag ≥ 1") };
                insert_candidate(&mut best, cand, opts.keep, lag);
            }
        }
        let (cell, next) = map.step(&s);
        pos[slot] = here;
        cells[slot] = cell;
        s = next;
    }
    best
}

/// Keeps `best` sorted by gap, at most `keep` long, with windows more than
/// `lag` apart (overlapping windows shadow the same cycle).
fn insert_candidate(best: &mut Vec<NearReturn>, cand: NearReturn, keep: usize, lag: usize) {
    let overlaps = |b: &NearReturn| b.start.abs_diff(cand.start) <= lag;
    if best.iter().any(|b| overlaps(b) && b.gap <= cand.gap) {
        return;
    }
    best.retain(|b| !overlaps(b));
    let at = best.partition_point(|b| b.gap <= cand.gap);
    best.insert(at, cand);
    best.truncate(keep);
}

/// Grid of initial states `(i/N, j/N)`, `0 ≤ i ≤ j ≤ N`, row-major in `i`.
pub fn simplex_grid(n: i64) -> impl Iterator<Item = Point> {
    (0..=n).flat_map(move |i| {
        (i..=n).map(move |j| Point::new(crate::numerics::q(i, n), crate::numerics::q(j, n)))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodSearchOptions {
    pub lag: usize,
    pub grid: i64,
    pub orbit_len: usize,
    pub keep: usize,
    /// Windows with a larger gap are not submitted for certification.
    pub max_gap: f64,
    /// Budget of the preliminary Brent scout that skips starts attracted
    /// to a short cycle.
    pub scout_budget: usize,
    /// Stop after this many starts have run a full near-return search.
    pub max_searches: usize,
    pub prec: u64,
}

impl PeriodSearchOptions {
    pub fn new(lag: usize) -> Self {
        PeriodSearchOptions {
            lag,
            grid: 200,
            orbit_len: 10_000_000,
            keep: 8,
            max_gap: 1e-3,
            scout_budget: 20_000,
            max_searches: 4,
            prec: SCOUT_PRECISION,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PeriodSearchOutcome {
    pub certificate: Option<CycleCertificate>,
    /// Grid start whose orbit produced the certified window.
    pub start: Option<Point>,
    pub window: Option<NearReturn>,
    /// Grid points visited, and how many of them ran a full search.
    pub starts_visited: usize,
    pub searches: usize,
    pub rejected: Vec<(f64, CertifyError)>,
}

/// Sweeps the simplex grid in order. A start whose floating orbit settles
/// on a cycle of period `lag` is certified directly; one settling on any
/// other period is skipped. The rest are searched for near-returns at
/// `lag`, and windows are certified best-gap first until one yields a cycle
/// of period exactly `lag`.
pub fn search_cycle_of_period(p: &ThreeWorkerParams, opts: &PeriodSearchOptions) -> PeriodSearchOutcome {
    let mut out = PeriodSearchOutcome {
        certificate: None,
        start: None,
        window: None,
        starts_visited: 0,
        searches: 0,
        rejected: Vec::new(),
    };
    for s0 in simplex_grid(opts.grid) {
        if out.searches >= opts.max_searches {
            break;
        }
        out.starts_visited += 1;
        if let Some(settled) = scout_orbit(p, &s0, opts.scout_budget, opts.prec) {
            if settled.period == opts.lag {
                let cells = float_itinerary(p, &s0, settled.transient, settled.period, opts.prec);
                if let Ok(mut cert) = CellItinerary::new(cells).and_then(|it| certify_cycle(p, &it)) {
                    cert.transient_bound = Some(settled.transient);
                    out.certificate = Some(cert);
                    out.start = Some(s0);
                    return out;
                }
            }
            continue;
        }
        out.searches += 1;
        let nr = NearReturnOptions { lag: opts.lag, orbit_len: opts.orbit_len, keep: opts.keep, prec: opts.prec };
        for cand in near_return_search(p, &s0, &nr) {
            if cand.gap > opts.max_gap {
                break;
            }
            match certify_cycle(p, &cand.itinerary) {
                Ok(cert) => {
                    out.certificate = Some(cert);
                    out.start = Some(s0);
                    out.window = Some(cand);
                    return out;
                }
                Err(e) => out.rejected.push((cand.gap, e)),
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::q;

    #[test]
    fn grid_covers_the_simplex() {
        let pts: Vec<Point> = simplex_grid(2).collect();
        assert_eq!(pts.len(), 6);
        assert!(pts.iter().all(Point::in_simplex));
        assert_eq!(pts[0], Point::new(q(0, 1), q(0, 1)));
    }

    #[test]
    fn candidates_stay_sorted_and_apart() {
        let it = CellItinerary::new(vec![Cell::C4]).unwrap();
        let mk = |start, gap| NearReturn { start, gap, itinerary: it.clone() };
        let mut best = Vec::new();
        for (s, g) in [(10, 0.5), (12, 0.1), (100, 0.3), (200, 0.2), (300, 0.9)] {
            insert_candidate(&mut best, mk(s, g), 3, 5);
        }
        let got: Vec<(usize, f64)> = best.iter().map(|b| (b.start, b.gap)).collect();
        assert_eq!(got, vec![(12, 0.1), (200, 0.2), (100, 0.3)]);
    }

    #[test]
    fn attracting_cycle_of_requested_period_is_certified() {
        let p = ThreeWorkerParams::new(q(3, 1), q(1, 2)).unwrap();
        let opts = PeriodSearchOptions { grid: 10, ..PeriodSearchOptions::new(35) };
        let out = search_cycle_of_period(&p, &opts);
        assert_eq!(out.certificate.map(|c| c.period), Some(35));
        assert_eq!(out.searches, 0);
    }

    #[test]
    fn short_attracting_cycle_found_by_near_return() {
        // Near-returns at the right lag on an attracting cycle have gap 0.
        let p = ThreeWorkerParams::new(q(1, 2), q(2, 1)).unwrap();
        let opts = NearReturnOptions { lag: 2, orbit_len: 500, keep: 1, prec: 128 };
        let best = near_return_search(&p, &Point::new(q(0, 1), q(9, 10)), &opts);
        let cert = certify_cycle(&p, &best[0].itinerary).unwrap();
        assert_eq!(cert.period, 2);
    }
}
