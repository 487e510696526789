//! Acceptance criteria. Each test prints one PASS/FAIL line with its
//! runtime against a pinned limit, and fails if either the check or the
//! limit fails. Tests hold a shared lock so timings are not distorted by
//! running side by side.

use std::cmp::Ordering;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use brigade::cycle::{certify_cycle, search_cycle_of_period, CellItinerary, FloatMap, PeriodSearchOptions};
use brigade::fixed_point::{constant_velocity_fixed_point, scan_fixed_points, verify_fixed_point};
use brigade::line::{reset_map, BrigadeConfig, VelocityProfile, DEFAULT_DENOM_CAP_BITS};
use brigade::numerics::{float_to_f64, quad_compare};
use brigade::three_worker::{
    classify_cell, classify_region3, derived_constants, p_star, region2_stable_segment, region2_two_cycle,
    region_of, reset_map3, sigma_invariance_check, AsymptoticBehavior, Point, Region, SigmaSet,
    ThreeWorkerParams,
};
use brigade::{q, Rational};

static SERIAL: Mutex<()> = Mutex::new(());

/// Runs `check` under the lock, prints the verdict line and asserts.
fn criterion(id: u32, name: &str, limit: Duration, check: impl FnOnce() -> Result<String, String>) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let (ok, detail) = match &result {
        Ok(d) => (in_time, d.clone()),
        Err(d) => (false, d.clone()),
    };
    println!(
        "{} criterion {id} ({name}): {detail} [runtime {:.2}s, limit {:.0}s{}]",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs_f64(),
        if in_time { "" } else { ", exceeded" },
    );
    assert!(ok, "criterion {id} failed: {detail}");
}

/// Uniform rational in the half-open interval `(lo, hi]` with denominator
/// at most `max_den`.
fn rational_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64, max_den: i64) -> Rational {
    loop {
        let d = rng.gen_range(1..=max_den);
        let kmin = (lo * d as f64).floor() as i64 + 1;
        let kmax = (hi * d as f64).floor() as i64;
        if kmin <= kmax {
            return q(rng.gen_range(kmin..=kmax), d);
        }
    }
}

fn random_state(rng: &mut ChaCha8Rng) -> Point {
    let n = rng.gen_range(1..=60);
    let i = rng.gen_range(0..=n);
    let j = rng.gen_range(i..=n);
    Point::new(q(i, n), q(j, n))
}

fn params(r1: Rational, r2: Rational) -> ThreeWorkerParams {
    ThreeWorkerParams::new(r1, r2).unwrap()
}

fn random_params_in(rng: &mut ChaCha8Rng, region: Region) -> ThreeWorkerParams {
    loop {
        let (r1, r2) = match region {
            Region::R1 => {
                let r1 = rational_in(rng, 0.0, 1.0, 20);
                let r2 = rational_in(rng, 0.0, r1.to_f64() + 1.0, 20);
                (r1, r2)
            }
            Region::R2 => {
                let r1 = rational_in(rng, 0.0, 1.0, 20);
                let r2 = rational_in(rng, r1.to_f64() + 1.0, r1.to_f64() + 4.0, 20);
                (r1, r2)
            }
            Region::R3 => (rational_in(rng, 1.0, 4.0, 20), rational_in(rng, 1.0, 4.0, 20)),
            Region::RK => (rational_in(rng, 1.0, 4.0, 20), rational_in(rng, 0.0, 1.0, 20)),
        };
        let p = params(r1, r2);
        if region_of(&p) == region {
            return p;
        }
    }
}

#[test]
fn c01_oracle_equivalence() {
    criterion(1, "general reset map equals the four-cell map", Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut compared = 0;
        for k in 0..100 {
            let region = [Region::R1, Region::R2, Region::R3, Region::RK][k % 4];
            let p = random_params_in(&mut rng, region);
            let cfg = BrigadeConfig::constant(&[p.r1().clone(), p.r2().clone(), Rational::one()]).unwrap();
            for _ in 0..100 {
                let s = random_state(&mut rng);
                let general = Point::from_reset_state(&reset_map(&cfg, &s.to_reset_state().unwrap())).unwrap();
                let explicit = reset_map3(&p, &s);
                if general != explicit {
                    return Err(format!("at {p}, s = {s}: general {general} vs explicit {explicit}"));
                }
                compared += 1;
            }
        }
        Ok(format!("{compared} states agree exactly"))
    });
}

#[test]
fn c02_closed_form_fixed_point() {
    criterion(2, "closed-form fixed point is fixed", Duration::from_secs(5), || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let n = rng.gen_range(2..=6);
            let v: Vec<Rational> = (0..n).map(|_| rational_in(&mut rng, 0.0, 5.0, 30)).collect();
            let cfg = BrigadeConfig::constant(&v).unwrap();
            let s = constant_velocity_fixed_point(&v).unwrap();
            if !verify_fixed_point(&cfg, &s) {
                return Err(format!("velocities {v:?}: {s} is not fixed"));
            }
        }
        Ok("100 configurations with n in 2..=6 verified exactly".into())
    });
}

#[test]
fn c03_figure_one_constants() {
    criterion(3, "derived constants at r = (2, 4/3)", Duration::from_secs(1), || {
        let dc = derived_constants(&params(q(2, 1), q(4, 3)));
        let got = (dc.theta.clone(), dc.phi.clone(), dc.alpha.clone(), dc.p_star.clone());
        let want = (Some(q(2, 5)), Some(q(4, 5)), Some(q(5, 8)), Point::new(q(6, 13), q(10, 13)));
        if got == want {
            Ok("θ = 2/5, φ = 4/5, α = 5/8, p* = (6/13, 10/13)".into())
        } else {
            Err(format!("got {got:?}"))
        }
    });
}

#[test]
fn c04_region3_trichotomy() {
    criterion(4, "Region-3 trichotomy", Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut counts = [0usize; 3];
        for _ in 0..20 {
            let r2 = rational_in(&mut rng, 0.999, 3.0, 12);
            let r1 = rational_in(&mut rng, r2.to_f64(), r2.to_f64() + 3.0, 12);
            let p = params(r1, r2);
            // Random starts rarely land on p* or in the (0, θ) basin, so both
            // are added explicitly.
            let theta = derived_constants(&p).theta.expect("r1·r2 > 1");
            let mut starts: Vec<Point> = (0..500).map(|_| random_state(&mut rng)).collect();
            starts.push(p_star(&p));
            starts.push(Point::new(Rational::zero(), theta));
            for s in starts {
                match classify_region3(&p, &s, 100_000).map_err(|e| e.to_string())? {
                    AsymptoticBehavior::FixedPoint => counts[0] += 1,
                    AsymptoticBehavior::StandardThreeCycle => counts[1] += 1,
                    AsymptoticBehavior::OtherThreeCycle => counts[2] += 1,
                    other => return Err(format!("{p}, s = {s}: {other}")),
                }
            }
        }
        Ok(format!("fixed point {}, standard cycle {}, other cycle {}", counts[0], counts[1], counts[2]))
    });
}

/// Itinerary read off the listed orbit, then certified independently.
fn certify_state_set(p: &ThreeWorkerParams, orbit: &[Point]) -> Result<String, String> {
    let cells = orbit.iter().map(|s| classify_cell(p, s)).collect();
    let it = CellItinerary::new(cells).map_err(|e| e.to_string())?;
    let cert = certify_cycle(p, &it).map_err(|e| e.to_string())?;
    cert.verify().map_err(|e| e.to_string())?;
    let mut got = cert.states();
    let mut want = orbit.to_vec();
    got.sort();
    want.sort();
    if cert.period != 3 || got != want {
        return Err(format!("certified period {} with states {got:?}", cert.period));
    }
    Ok(format!("{it}"))
}

#[test]
fn c05_both_three_cycles() {
    criterion(5, "both 3-cycles certified at r = (2, 4/3)", Duration::from_secs(1), || {
        let p = params(q(2, 1), q(4, 3));
        let pt = |a, b, c, d| Point::new(q(a, b), q(c, d));
        let standard = [pt(1, 1, 1, 1), pt(0, 1, 1, 1), pt(0, 1, 0, 1)];
        let other = [pt(0, 1, 2, 5), pt(4, 5, 4, 5), pt(2, 5, 1, 1)];
        let a = certify_state_set(&p, &standard)?;
        let b = certify_state_set(&p, &other)?;
        Ok(format!("itineraries {a} and {b}, exact replay"))
    });
}

#[test]
fn c06_region2_cycle_and_segment() {
    criterion(6, "Region-2 two-cycle and stable segment", Duration::from_secs(10), || {
        let p = params(q(1, 2), q(2, 1));
        let (a, b) = region2_two_cycle(&p).map_err(|e| e.to_string())?;
        let (ea, eb) = (Point::new(q(1, 3), q(1, 1)), Point::new(q(0, 1), q(1, 3)));
        if (a.clone(), b.clone()) != (ea, eb) || reset_map3(&p, &a) != b || reset_map3(&p, &b) != a {
            return Err(format!("two-cycle {a}, {b} does not swap"));
        }
        let seg = region2_stable_segment(&p).map_err(|e| e.to_string())?;
        if quad_compare(&seg.eigenvalue.abs(), &Rational::one()) != Ordering::Less {
            return Err(format!("stable eigenvalue {} has modulus ≥ 1", seg.eigenvalue));
        }
        let target = p_star(&p);
        if target != Point::new(q(1, 7), q(5, 7)) {
            return Err(format!("p* = {target}"));
        }
        let map = FloatMap::new(&p, 128);
        let goal = map.point(&target);
        let mut worst = 0.0f64;
        for k in 0..100 {
            let s = seg.point_at(&q(2 * k + 1 - 100, 100));
            let mut f = (s.x.to_float(128), s.y.to_float(128));
            for _ in 0..50 {
                f = map.step(&f).1;
            }
            let d = float_to_f64(&(&f.0 - &goal.0)).abs().max(float_to_f64(&(&f.1 - &goal.1)).abs());
            worst = worst.max(d);
        }
        if worst >= 1e-9 {
            return Err(format!("worst distance to p* after 50 steps {worst:e}"));
        }
        Ok(format!("λ = {}, worst distance after 50 steps {worst:.1e}", seg.eigenvalue))
    });
}

#[test]
fn c07_sigma_invariance() {
    criterion(7, "Σ at r = (4/3, 2)", Duration::from_secs(30), || {
        let p = params(q(4, 3), q(2, 1));
        let sig = SigmaSet::new(&p).map_err(|e| e.to_string())?;
        let pt = |a, b, c, d| Point::new(q(a, b), q(c, d));
        let figure = [
            pt(0, 1, 4, 15),
            pt(4, 15, 4, 15),
            pt(4, 5, 4, 5),
            pt(3, 5, 4, 5),
            pt(4, 5, 1, 1),
            pt(4, 15, 1, 1),
            pt(0, 1, 4, 5),
            pt(0, 1, 1, 2),
        ];
        for ((name, v), want) in sig.vertices().iter().zip(&figure) {
            if *v != want {
                return Err(format!("vertex {name} = {v}, figure shows {want}"));
            }
        }
        let report = sigma_invariance_check(&p, 10_000, 7).map_err(|e| e.to_string())?;
        let failing: Vec<String> =
            report.relations.iter().filter(|r| !r.holds).map(|r| format!("{} (image {})", r.relation, r.image)).collect();
        if !failing.is_empty() || report.violations > 0 {
            return Err(format!(
                "vertices match; relations failing: [{}]; {} of {} samples leave Σ",
                failing.join(", "),
                report.violations,
                report.samples
            ));
        }
        Ok("vertices, six relations and 10000 samples all hold".into())
    });
}

#[test]
fn c08_long_cycle() {
    criterion(8, "period-63667 cycle at velocities (6/5, 3, 1)", Duration::from_secs(300), || {
        let p = ThreeWorkerParams::from_velocities(&Rational::parse("1.2").unwrap(), &q(3, 1), &q(1, 1)).unwrap();
        let mut opts = PeriodSearchOptions::new(63_667);
        opts.grid = 200;
        let out = search_cycle_of_period(&p, &opts);
        let cert = out.certificate.ok_or_else(|| {
            format!("no certified cycle after {} grid starts ({} rejected windows)", out.starts_visited, out.rejected.len())
        })?;
        cert.verify().map_err(|e| e.to_string())?;
        if cert.period != 63_667 {
            return Err(format!("certified period {}", cert.period));
        }
        Ok(format!(
            "certified from grid start {} (gap {:.1e}), seed denominators {} bits, replayed",
            out.start.unwrap(),
            out.window.map_or(f64::NAN, |w| w.gap),
            cert.seed_bits()
        ))
    });
}

#[test]
fn c09_region1_convergence() {
    criterion(9, "Region-1 orbits converge to p*", Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut slowest = 0;
        for _ in 0..10 {
            // Kept 1/10 away from the region boundary, where convergence slows
            // without bound.
            let r1 = rational_in(&mut rng, 0.1, 0.9, 20);
            let r2 = rational_in(&mut rng, 0.1, r1.to_f64() + 0.9, 20);
            let p = params(r1, r2);
            let map = FloatMap::new(&p, 128);
            let goal = map.point(&p_star(&p));
            for i in 0..=50 {
                for j in i..=50 {
                    let mut f = map.point(&Point::new(q(i, 50), q(j, 50)));
                    let mut steps = 0;
                    loop {
                        let d = float_to_f64(&(&f.0 - &goal.0)).abs().max(float_to_f64(&(&f.1 - &goal.1)).abs());
                        if d < 1e-9 {
                            break;
                        }
                        if steps == 10_000 {
                            return Err(format!("{p}, start ({i}/50, {j}/50): distance {d:e} after 10^4 steps"));
                        }
                        f = map.step(&f).1;
                        steps += 1;
                    }
                    slowest = slowest.max(steps);
                }
            }
        }
        Ok(format!("13260 orbits within 1e-9 of p*, slowest after {slowest} steps"))
    });
}

fn random_profile(rng: &mut ChaCha8Rng) -> VelocityProfile {
    let pieces = rng.gen_range(1..=3);
    let mut cuts: Vec<i64> = Vec::new();
    while cuts.len() < pieces - 1 {
        let c = rng.gen_range(1..20);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort();
    let mut breakpoints = vec![Rational::zero()];
    breakpoints.extend(cuts.iter().map(|&c| q(c, 20)));
    breakpoints.push(Rational::one());
    let values = (0..pieces).map(|_| rational_in(rng, 0.2, 4.0, 6)).collect();
    VelocityProfile::new(breakpoints, values).unwrap()
}

#[test]
fn c10_fixed_point_uniqueness_scan() {
    criterion(10, "unique fixed point for piecewise profiles", Duration::from_secs(300), || {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut unresolved = 0;
        for k in 0..50 {
            let n = rng.gen_range(2..=3);
            let cfg = BrigadeConfig::new((0..n).map(|_| random_profile(&mut rng)).collect(), None).unwrap();
            let rep = scan_fixed_points(&cfg, &q(1, 500), DEFAULT_DENOM_CAP_BITS).map_err(|e| e.to_string())?;
            let verified: Vec<_> = rep.verified().map(|c| c.state.clone()).collect();
            if verified.len() != 1 {
                return Err(format!("configuration {k} (n = {n}): {} verified candidates {verified:?}", verified.len()));
            }
            unresolved += rep.unresolved().count();
        }
        Ok(format!("50 configurations, one verified fixed point each ({unresolved} unverified near-candidates)"))
    });
}
