//! The general n-worker line: velocity profiles, blocking, event-driven
//! advance to the next reset, and the reset map on Δ.

mod dynamics;
mod io;

pub use dynamics::{
    advance_to_reset, apply_reset, instantaneous_velocities, iterate, reset_map, reset_step,
    IterationStatus, TrajectoryRecord,
};
pub use io::{read_config, trajectory_csv, write_trajectory_csv, ConfigFile, ProfileFile};

use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::Rational;

/// Denominator guard applied when no explicit cap is given.
pub const DEFAULT_DENOM_CAP_BITS: u64 = 1_000_000;

/// Reads `BRIGADE_DENOM_CAP_BITS`, falling back to the default.
pub fn denom_cap_from_env() -> u64 {
    std::env::var("BRIGADE_DENOM_CAP_BITS")
        .ok()
        .and_then(|s| s.trim().replace('_', "").parse().ok())
        .unwrap_or(DEFAULT_DENOM_CAP_BITS)
}

/// Piecewise-constant velocity on [0, 1]. Piece `k` covers
/// `[breakpoints[k], breakpoints[k+1])`; the last piece also owns 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VelocityProfile {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

impl VelocityProfile {
    pub fn constant(v: Rational) -> Self {
        VelocityProfile { breakpoints: vec![Rational::zero(), Rational::one()], values: vec![v] }
    }

    /// Builds a profile, checking shape but not bounds.
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if breakpoints.len() < 2 || values.len() + 1 != breakpoints.len() {
            return Err(Error::Config(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                values.len()
            )));
        }
        if !breakpoints[0].is_zero() || breakpoints[breakpoints.len() - 1] != Rational::one() {
            return Err(Error::Config("breakpoints must start at 0 and end at 1".into()));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!("breakpoints not ascending at {} .. {}", w[0], w[1])));
        }
        if let Some(v) = values.iter().find(|v| !v.is_positive()) {
            return Err(Error::Config(format!("velocity {v} is not positive")));
        }
        Ok(VelocityProfile { breakpoints, values })
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_constant(&self) -> bool {
        self.values.len() == 1
    }

    /// Velocity at `x`, taking the piece to the right of a breakpoint.
    pub fn value_at(&self, x: &Rational) -> &Rational {
        let interior = &self.breakpoints[1..self.breakpoints.len() - 1];
        let piece = interior.partition_point(|b| b <= x);
        &self.values[piece]
    }

    /// First interior breakpoint strictly above `x`.
    pub fn next_breakpoint(&self, x: &Rational) -> Option<&Rational> {
        let interior = &self.breakpoints[1..self.breakpoints.len() - 1];
        let k = interior.partition_point(|b| b <= x);
        interior.get(k)
    }

    pub fn min_value(&self) -> &Rational {
        self.values.iter().min().expect("profile has a piece")
    }

    pub fn max_value(&self) -> &Rational {
        self.values.iter().max().expect("profile has a piece")
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        VelocityProfile {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }
}

/// A validated line of `n ≥ 2` workers with global velocity bounds
/// `0 < b < v < B` for every profile value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrigadeConfig {
    profiles: Vec<VelocityProfile>,
    bounds: (Rational, Rational),
}

impl BrigadeConfig {
    /// Checks every invariant and reports the first violation. Without
    /// explicit bounds, `(min/2, 2·max)` over all profile values is used.
    pub fn new(profiles: Vec<VelocityProfile>, bounds: Option<(Rational, Rational)>) -> Result<Self> {
        if profiles.len() < 2 {
            return Err(Error::Config(format!("need at least 2 workers, got {}", profiles.len())));
        }
        for (i, p) in profiles.iter().enumerate() {
            // Re-run the shape checks in case the profile was built elsewhere.
            VelocityProfile::new(p.breakpoints.clone(), p.values.clone())
                .map_err(|e| Error::Config(format!("worker {}: {e}", i + 1)))?;
        }
        let lo = profiles.iter().map(|p| p.min_value()).min().expect("nonempty").clone();
        let hi = profiles.iter().map(|p| p.max_value()).max().expect("nonempty").clone();
        let bounds = match bounds {
            Some((b, big)) => {
                if !b.is_positive() {
                    return Err(Error::Config(format!("lower bound {b} is not positive")));
                }
                if !(b < lo && hi < big) {
                    return Err(Error::Config(format!(
                        "velocities span [{lo}, {hi}], outside the open bounds ({b}, {big})"
                    )));
                }
                (b, big)
            }
            None => (&lo / Rational::from(2), &hi * Rational::from(2)),
        };
        Ok(BrigadeConfig { profiles, bounds })
    }

    /// Constant-velocity line.
    pub fn constant(velocities: &[Rational]) -> Result<Self> {
        for v in velocities {
            if !v.is_positive() {
                return Err(Error::Config(format!("velocity {v} is not positive")));
            }
        }
        Self::new(velocities.iter().cloned().map(VelocityProfile::constant).collect(), None)
    }

    pub fn n(&self) -> usize {
        self.profiles.len()
    }

    pub fn profiles(&self) -> &[VelocityProfile] {
        &self.profiles
    }

    pub fn bounds(&self) -> &(Rational, Rational) {
        &self.bounds
    }

    /// The velocities, when every profile is constant.
    pub fn constant_velocities(&self) -> Option<Vec<Rational>> {
        self.profiles
            .iter()
            .map(|p| p.is_constant().then(|| p.values[0].clone()))
            .collect()
    }

    /// Every profile multiplied by `k > 0`.
    pub fn scaled(&self, k: &Rational) -> Result<Self> {
        Self::new(
            self.profiles.iter().map(|p| p.scaled(k)).collect(),
            Some((&self.bounds.0 * k, &self.bounds.1 * k)),
        )
    }
}

/// Positions `x_1..x_n` of all workers, `0 ≤ x_1 ≤ … ≤ x_n ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FullState(Vec<Rational>);

/// Post-reset coordinates `x_2..x_n`; worker 1 sits at 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResetState(Vec<Rational>);

fn check_ordered(xs: &[Rational], lower: &Rational) -> Result<()> {
    let mut prev = lower;
    for x in xs {
        if x < prev {
            return Err(Error::Precondition(format!("coordinates not ordered: {x} < {prev}")));
        }
        prev = x;
    }
    if prev > &Rational::one() {
        return Err(Error::Precondition(format!("coordinate {prev} exceeds 1")));
    }
    Ok(())
}

impl FullState {
    pub fn new(positions: Vec<Rational>) -> Result<Self> {
        check_ordered(&positions, &Rational::zero())?;
        Ok(FullState(positions))
    }

    pub fn positions(&self) -> &[Rational] {
        &self.0
    }

    /// Worker 1 at 0 followed by the reset coordinates.
    pub fn from_reset(s: &ResetState) -> Self {
        let mut v = Vec::with_capacity(s.0.len() + 1);
        v.push(Rational::zero());
        v.extend(s.0.iter().cloned());
        FullState(v)
    }
}

impl ResetState {
    pub fn new(coordinates: Vec<Rational>) -> Result<Self> {
        check_ordered(&coordinates, &Rational::zero())?;
        Ok(ResetState(coordinates))
    }

    pub fn coordinates(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coordinates(self) -> Vec<Rational> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn max_denominator_bits(&self) -> u64 {
        self.0.iter().map(Rational::denominator_bits).max().unwrap_or(0)
    }
}

impl fmt::Display for ResetState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
