use crate::error::{Error, Result};
use crate::numerics::Rational;

use super::{BrigadeConfig, FullState, ResetState};

/// Actual speeds under blocking: `ẋ_n = v_n(x_n)` and, for `i < n`,
/// `ẋ_i = min(v_i(x_i), ẋ_{i+1})` when `x_i = x_{i+1}`, else `v_i(x_i)`.
pub fn instantaneous_velocities(cfg: &BrigadeConfig, s: &FullState) -> Vec<Rational> {
    let x = s.positions();
    let n = x.len();
    let mut v: Vec<Rational> = cfg.profiles.iter().zip(x).map(|(p, xi)| p.value_at(xi).clone()).collect();
    for i in (0..n - 1).rev() {
        if x[i] == x[i + 1] && v[i + 1] < v[i] {
            v[i] = v[i + 1].clone();
        }
    }
    v
}

/// Integrates from `start` until worker n reaches 1, event by event.
/// Returns the pre-reset state and the exact elapsed time.
pub fn advance_to_reset(cfg: &BrigadeConfig, start: &FullState) -> (FullState, Rational) {
    let one = Rational::one();
    let n = cfg.n();
    assert_eq!(start.positions().len(), n, "state dimension does not match the line");
    let mut x = start.positions().to_vec();
    let mut elapsed = Rational::zero();
    while x[n - 1] < one {
        let v = instantaneous_velocities(cfg, &FullState(x.clone()));
        let mut dt = (&one - &x[n - 1]) / &v[n - 1];
        for i in 0..n {
            if let Some(bp) = cfg.profiles[i].next_breakpoint(&x[i]) {
                let t = (bp - &x[i]) / &v[i];
                if t < dt {
                    dt = t;
                }
            }
            if i + 1 < n && x[i] < x[i + 1] && v[i] > v[i + 1] {
                let t = (&x[i + 1] - &x[i]) / (&v[i] - &v[i + 1]);
                if t < dt {
                    dt = t;
                }
            }
        }
        for (xi, vi) in x.iter_mut().zip(&v) {
            *xi += &(vi * &dt);
        }
        elapsed += &dt;
    }
    (FullState(x), elapsed)
}

/// Walkback: `(x_1, …, x_{n−1})` of the pre-reset state become `x_2..x_n`.
pub fn apply_reset(pre_reset: &FullState) -> Result<ResetState> {
    let x = pre_reset.positions();
    match x.last() {
        Some(last) if *last == Rational::one() => Ok(ResetState(x[..x.len() - 1].to_vec())),
        Some(last) => Err(Error::Precondition(format!("last worker at {last}, not at 1"))),
        None => Err(Error::Precondition("empty state".into())),
    }
}

/// One reset cycle: the next post-reset state and the elapsed time.
pub fn reset_step(cfg: &BrigadeConfig, s: &ResetState) -> (ResetState, Rational) {
    assert_eq!(s.dim() + 1, cfg.n(), "state dimension does not match the line");
    let (pre, elapsed) = advance_to_reset(cfg, &FullState::from_reset(s));
    let next = apply_reset(&pre).expect("advance stops with the last worker at 1");
    (next, elapsed)
}

/// The reset function `f: Δ → Δ`.
pub fn reset_map(cfg: &BrigadeConfig, s: &ResetState) -> ResetState {
    reset_step(cfg, s).0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IterationStatus {
    Complete,
    /// Stopped before step `step` would have exceeded the denominator cap.
    Truncated { step: usize, bits: u64, cap: u64 },
}

/// `states[0] = s0`, `states[k] = f(states[k−1])`; `reset_times[k−1]` is
/// the time spent between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryRecord {
    pub states: Vec<ResetState>,
    pub reset_times: Vec<Rational>,
    pub status: IterationStatus,
}

/// Applies the reset map `k` times, stopping early if a coordinate's
/// denominator exceeds `cap_bits`.
pub fn iterate(cfg: &BrigadeConfig, s0: &ResetState, k: usize, cap_bits: u64) -> TrajectoryRecord {
    let mut states = vec![s0.clone()];
    let mut reset_times = Vec::with_capacity(k);
    let mut status = IterationStatus::Complete;
    let mut s = s0.clone();
    for step in 1..=k {
        let (next, t) = reset_step(cfg, &s);
        let bits = next.max_denominator_bits().max(t.denominator_bits());
        if bits > cap_bits {
            status = IterationStatus::Truncated { step, bits, cap: cap_bits };
            break;
        }
        states.push(next.clone());
        reset_times.push(t);
        s = next;
    }
    TrajectoryRecord { states, reset_times, status }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line::{VelocityProfile, DEFAULT_DENOM_CAP_BITS};
    use crate::numerics::q;

    fn line(v: &[Rational]) -> BrigadeConfig {
        BrigadeConfig::constant(v).unwrap()
    }

    fn full(x: &[Rational]) -> FullState {
        FullState::new(x.to_vec()).unwrap()
    }

    fn reset(x: &[Rational]) -> ResetState {
        ResetState::new(x.to_vec()).unwrap()
    }

    #[test]
    fn velocity_examples() {
        let s = full(&[q(1, 4), q(1, 4)]);
        assert_eq!(instantaneous_velocities(&line(&[q(2, 1), q(1, 1)]), &s), vec![q(1, 1), q(1, 1)]);
        assert_eq!(instantaneous_velocities(&line(&[q(1, 1), q(2, 1)]), &s), vec![q(1, 1), q(2, 1)]);
        let s3 = full(&[q(1, 2), q(1, 2), q(1, 2)]);
        assert_eq!(
            instantaneous_velocities(&line(&[q(3, 1), q(2, 1), q(1, 1)]), &s3),
            vec![q(1, 1), q(1, 1), q(1, 1)]
        );
    }

    #[test]
    fn advance_examples() {
        let (pre, t) = advance_to_reset(&line(&[q(1, 1), q(2, 1)]), &full(&[q(0, 1), q(1, 2)]));
        assert_eq!(pre, full(&[q(1, 4), q(1, 1)]));
        assert_eq!(t, q(1, 4));
        let (pre, t) = advance_to_reset(&line(&[q(2, 1), q(1, 1)]), &full(&[q(0, 1), q(1, 2)]));
        assert_eq!(pre, full(&[q(1, 1), q(1, 1)]));
        assert_eq!(t, q(1, 2));
        let at_end = full(&[q(1, 3), q(1, 1)]);
        assert_eq!(advance_to_reset(&line(&[q(1, 1), q(2, 1)]), &at_end), (at_end.clone(), q(0, 1)));
    }

    #[test]
    fn reset_examples() {
        assert_eq!(apply_reset(&full(&[q(1, 4), q(1, 1)])).unwrap(), reset(&[q(1, 4)]));
        assert_eq!(apply_reset(&full(&[q(0, 1), q(2, 5), q(1, 1)])).unwrap(), reset(&[q(0, 1), q(2, 5)]));
        assert_eq!(apply_reset(&full(&[q(1, 1), q(1, 1), q(1, 1)])).unwrap(), reset(&[q(1, 1), q(1, 1)]));
        assert!(apply_reset(&full(&[q(1, 4), q(1, 2)])).is_err());
    }

    #[test]
    fn reset_map_fixed_points() {
        assert_eq!(reset_map(&line(&[q(1, 1), q(2, 1)]), &reset(&[q(1, 3)])), reset(&[q(1, 3)]));
        let p = reset(&[q(6, 13), q(10, 13)]);
        assert_eq!(reset_map(&line(&[q(2, 1), q(4, 3), q(1, 1)]), &p), p);
    }

    #[test]
    fn iterate_examples() {
        let cfg = line(&[q(2, 1), q(4, 3), q(1, 1)]);
        let s0 = reset(&[q(0, 1), q(2, 5)]);
        let tr = iterate(&cfg, &s0, 0, DEFAULT_DENOM_CAP_BITS);
        assert_eq!(tr.states, vec![s0.clone()]);
        assert!(tr.reset_times.is_empty());
        let tr = iterate(&cfg, &s0, 3, DEFAULT_DENOM_CAP_BITS);
        assert_eq!(tr.states[3], s0);
        assert_eq!(tr.states[1], reset(&[q(4, 5), q(4, 5)]));
        assert_eq!(tr.states[2], reset(&[q(2, 5), q(1, 1)]));
        // (2/5, 1) already has the last worker at 1, so that reset takes no time.
        assert_eq!(tr.reset_times, vec![q(3, 5), q(1, 5), q(0, 1)]);

        let eq = line(&[q(1, 1), q(1, 1)]);
        let tr = iterate(&eq, &reset(&[q(1, 4)]), 2, DEFAULT_DENOM_CAP_BITS);
        assert_eq!(tr.states[1], reset(&[q(3, 4)]));
        assert_eq!(tr.states[2], reset(&[q(1, 4)]));
    }

    #[test]
    fn iterate_truncates_at_cap() {
        let cfg = line(&[q(1, 1), q(3, 1)]);
        let tr = iterate(&cfg, &reset(&[q(1, 7)]), 10, 2);
        assert!(matches!(tr.status, IterationStatus::Truncated { step: 1, .. }));
        assert_eq!(tr.states.len(), 1);
    }

    #[test]
    fn blocked_worker_released_at_own_breakpoint() {
        // Worker 1 is fast until 1/2, then slower than worker 2.
        let p1 = VelocityProfile::new(vec![q(0, 1), q(1, 2), q(1, 1)], vec![q(4, 1), q(1, 2)]).unwrap();
        let p2 = VelocityProfile::constant(q(1, 1));
        let cfg = BrigadeConfig::new(vec![p1, p2], None).unwrap();
        // Worker 1 catches worker 2 at 1/3 (t = 1/12 after start at 1/4),
        // rides behind it to 1/2, then drops to 1/2 speed.
        let (pre, t) = advance_to_reset(&cfg, &full(&[q(0, 1), q(1, 4)]));
        assert_eq!(t, q(3, 4));
        assert_eq!(pre, full(&[q(1, 2) + q(1, 2) * q(1, 2), q(1, 1)]));
    }
}
