use proptest::prelude::*;

use brigade::line::{
    instantaneous_velocities, reset_map, reset_step, BrigadeConfig, FullState, ResetState, VelocityProfile,
};
use brigade::three_worker::{reset_map3, Point, ThreeWorkerParams};
use brigade::{q, Rational};

fn speed() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=10).prop_map(|(n, d)| q(n, d))
}

/// Profile with up to three pieces on breakpoints k/20.
fn profile() -> impl Strategy<Value = VelocityProfile> {
    (proptest::collection::btree_set(1i64..20, 0..=2), proptest::collection::vec(speed(), 3)).prop_map(|(cuts, vals)| {
        let mut bps = vec![Rational::zero()];
        bps.extend(cuts.iter().map(|&c| q(c, 20)));
        bps.push(Rational::one());
        let pieces = bps.len() - 1;
        VelocityProfile::new(bps, vals[..pieces].to_vec()).unwrap()
    })
}

fn config(max_n: usize) -> impl Strategy<Value = BrigadeConfig> {
    proptest::collection::vec(profile(), 2..=max_n).prop_map(|ps| BrigadeConfig::new(ps, None).unwrap())
}

/// `dim` sorted coordinates in [0, 1] on the grid k/60.
fn state(dim: usize) -> impl Strategy<Value = ResetState> {
    proptest::collection::vec(0i64..=60, dim).prop_map(|mut v| {
        v.sort();
        ResetState::new(v.into_iter().map(|k| q(k, 60)).collect()).unwrap()
    })
}

fn config_and_state(max_n: usize) -> impl Strategy<Value = (BrigadeConfig, ResetState)> {
    config(max_n).prop_flat_map(|cfg| {
        let dim = cfg.n() - 1;
        (Just(cfg), state(dim))
    })
}

proptest! {
    #[test]
    fn reset_map_stays_in_simplex((cfg, s) in config_and_state(5)) {
        let image = reset_map(&cfg, &s);
        // ResetState::new re-checks 0 ≤ x_2 ≤ … ≤ x_n ≤ 1.
        prop_assert!(ResetState::new(image.coordinates().to_vec()).is_ok());
        prop_assert_eq!(image.dim(), s.dim());
    }

    #[test]
    fn constant_last_worker_sets_elapsed_time(
        (cfg, s) in config_and_state(4),
        vn in speed(),
    ) {
        let mut profiles = cfg.profiles().to_vec();
        *profiles.last_mut().unwrap() = VelocityProfile::constant(vn.clone());
        let cfg = BrigadeConfig::new(profiles, None).unwrap();
        let xn = s.coordinates().last().unwrap().clone();
        let (_, elapsed) = reset_step(&cfg, &s);
        prop_assert_eq!(elapsed, (Rational::one() - xn) / vn);
    }

    #[test]
    fn scaling_velocities_rescales_time((cfg, s) in config_and_state(4), k in speed()) {
        let scaled = cfg.scaled(&k).unwrap();
        let (a, ta) = reset_step(&cfg, &s);
        let (b, tb) = reset_step(&scaled, &s);
        prop_assert_eq!(a, b);
        prop_assert_eq!(tb, ta / k);
    }

    #[test]
    fn blocking_only_slows((cfg, s) in config_and_state(5)) {
        let full = FullState::from_reset(&s);
        let x = full.positions();
        let v = instantaneous_velocities(&cfg, &full);
        for i in 0..x.len() {
            let own = cfg.profiles()[i].value_at(&x[i]);
            prop_assert!(v[i] <= *own);
            if i + 1 == x.len() || x[i] < x[i + 1] {
                prop_assert_eq!(&v[i], own);
            }
        }
    }

    #[test]
    fn general_map_matches_four_cell_map(
        r1 in speed(), r2 in speed(),
        (i, j) in (0i64..=60).prop_flat_map(|i| (Just(i), i..=60)),
    ) {
        let p = ThreeWorkerParams::new(r1.clone(), r2.clone()).unwrap();
        let cfg = BrigadeConfig::constant(&[r1, r2, Rational::one()]).unwrap();
        let s = Point::new(q(i, 60), q(j, 60));
        let general = reset_map(&cfg, &s.to_reset_state().unwrap());
        prop_assert_eq!(Point::from_reset_state(&general).unwrap(), reset_map3(&p, &s));
    }
}
