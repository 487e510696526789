use proptest::prelude::*;

use brigade::cycle::{certify_cycle, compose_affine, float_itinerary, scout_orbit, CellItinerary};
use brigade::line::{BrigadeConfig, DEFAULT_DENOM_CAP_BITS};
use brigade::fixed_point::{constant_velocity_fixed_point, scan_fixed_points};
use brigade::three_worker::{iterate3, reset_map3, step3, Cell, Point, Region, ThreeWorkerParams};
use brigade::{q, Rational};

fn ratio() -> impl Strategy<Value = Rational> {
    (1i64..=60, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn params() -> impl Strategy<Value = ThreeWorkerParams> {
    (ratio(), ratio()).prop_map(|(a, b)| ThreeWorkerParams::new(a, b).unwrap())
}

/// Region 3 or Region k: `r1 > 1`.
fn r3k_params() -> impl Strategy<Value = ThreeWorkerParams> {
    (1i64..=40, 1i64..=8, ratio()).prop_map(|(a, b, r2)| ThreeWorkerParams::new(Rational::one() + q(a, b), r2).unwrap())
}

fn state() -> impl Strategy<Value = Point> {
    (1i64..=100).prop_flat_map(|n| (0..=n).prop_flat_map(move |i| (i..=n).prop_map(move |j| Point::new(q(i, n), q(j, n)))))
}

fn cells_along(p: &ThreeWorkerParams, s: &Point, k: usize) -> Vec<Cell> {
    let mut cells = Vec::with_capacity(k);
    let mut s = s.clone();
    for _ in 0..k {
        let (c, next) = step3(p, &s);
        cells.push(c);
        s = next;
    }
    cells
}

proptest! {
    #[test]
    fn composition_matches_sequential_pieces(p in params(), s in state(), k in 1usize..=8) {
        let it = CellItinerary::new(cells_along(&p, &s, k)).unwrap();
        prop_assert_eq!(compose_affine(&p, &it).apply(&s), iterate3(&p, &s, k));
    }

    #[test]
    fn c1_collapses_composition(p in params(), a in state(), b in state(), tail in proptest::collection::vec(0usize..4, 0..6)) {
        let mut cells = vec![Cell::C1];
        cells.extend(tail.iter().map(|&k| Cell::ALL[k]));
        let comp = compose_affine(&p, &CellItinerary::new(cells).unwrap());
        prop_assert!(comp.collapses_to_constant);
        prop_assert_eq!(comp.apply(&a), comp.apply(&b));
    }

    #[test]
    fn certificates_replay_exactly(p in params(), s in state()) {
        let skip = 200;
        let Some(cand) = scout_orbit(&p, &s, 20_000, 128) else { return Ok(()) };
        prop_assume!(cand.period <= 200);
        let cells = float_itinerary(&p, &s, cand.transient.max(skip), cand.period, 128);
        let Ok(cert) = certify_cycle(&p, &CellItinerary::new(cells).unwrap()) else { return Ok(()) };
        prop_assert!(cert.verify().is_ok());
        // Independent pass with the canonical map.
        let states = cert.states();
        let mut x = cert.seed.clone();
        for k in 0..cert.period {
            prop_assert_eq!(&x, &states[k]);
            x = reset_map3(&p, &x);
        }
        prop_assert_eq!(x, cert.seed.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn scout_period_matches_certified_period(p in r3k_params(), s in state()) {
        prop_assert!(matches!(p.region(), Region::R3 | Region::RK));
        let Some(cand) = scout_orbit(&p, &s, 20_000, 128) else { return Ok(()) };
        let cells = float_itinerary(&p, &s, cand.transient, cand.period, 128);
        if let Ok(cert) = certify_cycle(&p, &CellItinerary::new(cells).unwrap()) {
            prop_assert_eq!(cert.period, cand.period);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn scan_finds_the_closed_form_fixed_point(v in proptest::collection::vec((2i64..=16).prop_map(|k| q(k, 4)), 2..=3)) {
        // Speed ratios are kept within 8: the affine piece around p* narrows
        // as they grow and must contain grid points.
        let cfg = BrigadeConfig::constant(&v).unwrap();
        let rep = scan_fixed_points(&cfg, &q(1, 60), DEFAULT_DENOM_CAP_BITS).unwrap();
        let verified: Vec<_> = rep.verified().collect();
        prop_assert_eq!(verified.len(), 1);
        let expected = constant_velocity_fixed_point(&v).unwrap();
        prop_assert_eq!(&verified[0].state, &expected.coordinates().to_vec());
    }
}
